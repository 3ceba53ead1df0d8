#include "stozeta/cli_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace stozeta {

namespace {

bool parse_decimal(const std::string& text, std::size_t& pos, double& out) {
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    std::size_t digits_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (pos == digits_begin || (pos == digits_begin + 1 && text[digits_begin] == '.')) {
        pos = start;
        return false;
    }
    // optional exponent
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        std::size_t ep = pos + 1;
        if (ep < text.size() && (text[ep] == '+' || text[ep] == '-')) ++ep;
        std::size_t ed = ep;
        while (ep < text.size() && std::isdigit(static_cast<unsigned char>(text[ep]))) ++ep;
        if (ep > ed) pos = ep;
    }
    out = std::stod(text.substr(start, pos - start));
    return true;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
    std::size_t pos = 0;
    double re = 0.0;
    require(parse_decimal(text, pos, re), "config", "invalid complex literal: " + text);
    if (pos == text.size()) return {re, 0.0};
    double im = 0.0;
    require(parse_decimal(text, pos, im), "config", "invalid complex literal: " + text);
    require(pos + 1 == text.size() && text[pos] == 'i', "config",
            "invalid complex literal (expected trailing 'i'): " + text);
    return {re, im};
}

std::string format_complex(std::complex<double> z) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

void ExperimentConfig::validate() const {
    ensemble.validate();
    require(replicas >= 1, "config", "replicas must be >= 1");
    require(threads >= 0, "config", "threads must be >= 0");
    require(format == "csv" || format == "json", "config", "format must be csv or json");
    if (command == CommandKind::Converge) {
        require(n_list.size() >= 2, "config", "converge needs an increasing n-list (>= 2 entries)");
        for (std::size_t i = 1; i < n_list.size(); ++i)
            require(n_list[i] > n_list[i - 1], "config", "n-list must be increasing");
        require(!s_points.empty(), "config", "converge needs at least one s point");
        for (auto s : s_points)
            require(s.imag() != 0.0, "config", "converge s points must be non-real");
    }
    if (command == CommandKind::Evaluate) {
        require(grid_count >= 1 && grid_max >= grid_min, "config", "invalid evaluation grid");
    }
    if (command == CommandKind::Kernels) {
        require(correlation_order == 1 || correlation_order == 2, "config",
                "kernels order must be 1 or 2");
        require(window > 0.0 && bins >= 2, "config", "invalid kernels window/bins");
    }
    if (command == CommandKind::ZetaCompare) {
        require(!zeros_path.empty(), "config", "zeta-compare needs a zeros table path");
        require(T >= 1000.0, "config", "zeta-compare requires T >= 1000");
        require(!s_points.empty(), "config", "zeta-compare needs s points");
    }
}

void apply_config_json(ExperimentConfig& config, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        fail("config", std::string("invalid config JSON: ") + e.what());
    }
    static const char* known[] = {"command", "ensemble", "seed",    "replicas", "threads",
                                  "out",     "format",   "n_list",  "s_points", "grid_min",
                                  "grid_max", "grid_count", "order", "window",  "bins",
                                  "zeros",   "T",        "cap",     "dpp_window", "assert"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        require(ok, "config", "unknown config field: " + it.key());
    }
    if (j.contains("command")) {
        std::string c = j["command"].get<std::string>();
        if (c == "sample") config.command = CommandKind::Sample;
        else if (c == "evaluate") config.command = CommandKind::Evaluate;
        else if (c == "converge") config.command = CommandKind::Converge;
        else if (c == "propcrit") config.command = CommandKind::PropCrit;
        else if (c == "kernels") config.command = CommandKind::Kernels;
        else if (c == "zeta-compare") config.command = CommandKind::ZetaCompare;
        else fail("config", "unknown command: " + c);
    }
    if (j.contains("ensemble")) config.ensemble = EnsembleSpec::from_json(j["ensemble"].dump());
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("replicas")) config.replicas = j["replicas"].get<std::int64_t>();
    if (j.contains("threads")) config.threads = j["threads"].get<int>();
    if (j.contains("out")) config.output_path = j["out"].get<std::string>();
    if (j.contains("format")) config.format = j["format"].get<std::string>();
    if (j.contains("n_list")) config.n_list = j["n_list"].get<std::vector<std::size_t>>();
    if (j.contains("s_points")) {
        config.s_points.clear();
        for (const auto& item : j["s_points"]) config.s_points.push_back(parse_complex(item.get<std::string>()));
    }
    if (j.contains("grid_min")) config.grid_min = j["grid_min"].get<double>();
    if (j.contains("grid_max")) config.grid_max = j["grid_max"].get<double>();
    if (j.contains("grid_count")) config.grid_count = j["grid_count"].get<std::size_t>();
    if (j.contains("order")) config.correlation_order = j["order"].get<int>();
    if (j.contains("window")) config.window = j["window"].get<double>();
    if (j.contains("bins")) config.bins = j["bins"].get<std::size_t>();
    if (j.contains("zeros")) config.zeros_path = j["zeros"].get<std::string>();
    if (j.contains("T")) config.T = j["T"].get<double>();
    if (j.contains("cap")) config.cap_override = j["cap"].get<double>();
    if (j.contains("dpp_window")) config.dpp_window = j["dpp_window"].get<double>();
    if (j.contains("assert")) config.assert_verdict = j["assert"].get<bool>();
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        require(os.good(), "io", "cannot open temporary output file: " + tmp.string());
        os << contents;
        os.flush();
        require(os.good(), "io", "write failed for: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    require(!ec, "io", "rename failed for: " + path + " (" + ec.message() + ")");
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        require(!tok.empty(), "config", "empty entry in list: " + text);
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            require(pos == tok.size(), "config", "invalid number in list: " + tok);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail("config", "invalid number in list: " + tok);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(text)) {
        require(v >= 1.0 && v == std::floor(v), "config", "list entries must be positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<std::complex<double>> parse_complex_list(const std::string& text) {
    std::vector<std::complex<double>> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        require(!tok.empty(), "config", "empty entry in complex list: " + text);
        out.push_back(parse_complex(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace stozeta
