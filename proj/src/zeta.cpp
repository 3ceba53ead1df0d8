#include "stozeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "stozeta/holo.hpp"
#include "stozeta/kernels.hpp"
#include "stozeta/parallel.hpp"
#include "stozeta/rng.hpp"

namespace stozeta {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

}  // namespace

ZeroTable parse_zeros(std::istream& is, const std::string& source_name) {
    ZeroTable table;
    table.source = source_name;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            fail("parse", source_name + ": non-numeric ordinate at line " + std::to_string(lineno));
        }
        while (pos < line.size() && line[pos] == ' ') ++pos;
        require(pos == line.size(), "parse",
                source_name + ": trailing characters at line " + std::to_string(lineno));
        require(v > 0.0, "parse", source_name + ": non-positive ordinate at line " + std::to_string(lineno));
        if (!table.ordinates.empty() && v <= table.ordinates.back()) {
            fail("parse", source_name + ": non-ascending ordinate at line " + std::to_string(lineno));
        }
        table.ordinates.push_back(v);
    }
    require(!table.ordinates.empty(), "parse", source_name + ": no ordinates found");
    return table;
}

ZeroTable ingest_zeros(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), "io", "cannot open zeros file: " + path);
    return parse_zeros(is, path);
}

void write_zeros(const ZeroTable& table, std::ostream& os) {
    char buf[64];
    for (double v : table.ordinates) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        os << buf;
    }
}

double counting_main_term(double u) {
    require(u >= 0.0, "argument", "counting_main_term requires u >= 0");
    if (u == 0.0) return 0.0;
    return u / (2.0 * kPi) * std::log(u / (2.0 * kPi * std::numbers::e));
}

ZetaWindow make_window(const ZeroTable& table, double t, double T, double cap_override) {
    require(T >= 1000.0, "argument", "make_window requires T >= 1000");
    double log_T = std::log(T);
    require(t >= T / log_T && t <= T, "argument", "t must lie in [T/log T, T]");
    double cap = cap_override > 0.0 ? cap_override : log_T * log_T;
    // |x| <= cap translates to |gamma - t| <= 2 pi cap / log T
    double half_range = 2.0 * kPi * cap / log_T;
    double lo_needed = t - half_range;
    double hi_needed = t + half_range;
    if (table.ordinates.empty() || table.ordinates.front() > std::max(lo_needed, 15.0) ||
        table.ordinates.back() < hi_needed) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "zero table does not cover the window: need ordinates spanning "
                      "[%.6g, %.6g]", lo_needed, hi_needed);
        fail("range", buf);
    }
    ZetaWindow window;
    window.t = t;
    window.T = T;
    window.log_scale = log_T;
    window.cap = cap;
    const double scale = log_T / (2.0 * kPi);
    std::vector<double> pts;
    auto lo = std::lower_bound(table.ordinates.begin(), table.ordinates.end(), lo_needed);
    for (auto it = lo; it != table.ordinates.end() && *it <= hi_needed; ++it) {
        double x = (*it - t) * scale;
        if (std::abs(x) <= cap) pts.push_back(x);
    }
    window.points = PointConfiguration::from_values(std::move(pts));
    return window;
}

std::complex<double> empirical_zeta_ratio(const ZetaWindow& window, std::complex<double> s,
                                          double* t_shift) {
    require(!window.points.empty(), "argument", "empirical_zeta_ratio needs a non-empty window");
    if (t_shift) *t_shift = 0.0;
    const PointConfiguration* cfg = &window.points;
    PointConfiguration shifted;
    if (!window.points.origin_excluded ||
        interval_count(window.points, -1e-9, 1e-9, true, true) > 0) {
        // shift t by the smallest amount restoring the no-point-at-zero
        // precondition: move every point by +1e-8 in the unfolded variable
        double dx = 1e-8;
        std::vector<double> pts = window.points.points;
        for (double& p : pts) p += dx;
        shifted = PointConfiguration::from_values(std::move(pts));
        cfg = &shifted;
        if (t_shift) *t_shift = -dx * 2.0 * kPi / window.log_scale;
    }
    cd log_sum = cd(0.0, kPi) * s;
    for (double gamma : cfg->points) {
        if (s == cd(gamma, 0.0)) return 0.0;
        log_sum += std::log(1.0 - s / gamma);
    }
    return std::exp(log_sum);
}

std::string ZetaCompareReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["seed"] = seed;
    j["T"] = T;
    j["num_windows"] = num_windows;
    j["dpp_replicas"] = dpp_replicas;
    j["dpp_window"] = dpp_window;
    auto& sp = j["s_points"] = nlohmann::ordered_json::array();
    for (const auto& s : s_points) sp.push_back({{"re", s.real()}, {"im", s.imag()}});
    j["ks_modulus"] = ks_modulus;
    j["ks_argument"] = ks_argument;
    return j.dump(2);
}

ZetaCompareReport compare_to_sine_kernel(const ZeroTable& table, double T, std::size_t num_windows,
                                         const std::vector<std::complex<double>>& s_points,
                                         std::uint64_t seed, int threads, double dpp_window_A,
                                         std::size_t dpp_replicas) {
    require(num_windows >= 2, "argument", "compare_to_sine_kernel needs windows");
    require(!s_points.empty(), "argument", "compare_to_sine_kernel needs s points");
    if (dpp_replicas == 0) dpp_replicas = num_windows;
    double log_T = std::log(T);
    // fail early with the needed interval if the uniform-t range is uncovered
    {
        double cap = log_T * log_T;
        double half_range = 2.0 * kPi * cap / log_T;
        double lo_needed = T / log_T - half_range;
        double hi_needed = T + half_range;
        if (table.ordinates.empty() || table.ordinates.front() > std::max(lo_needed, 15.0) ||
            table.ordinates.back() < hi_needed) {
            char buf[200];
            std::snprintf(buf, sizeof(buf),
                          "zero table cannot cover uniform windows for T=%.6g: need ordinates "
                          "spanning [%.6g, %.6g]", T, lo_needed, hi_needed);
            fail("range", buf);
        }
    }

    ZetaCompareReport report;
    report.s_points = s_points;
    report.num_windows = num_windows;
    report.dpp_replicas = dpp_replicas;
    report.T = T;
    report.dpp_window = dpp_window_A;
    report.seed = seed;

    const std::size_t cols = s_points.size();
    std::vector<cd> zeta_vals(num_windows * cols);
    parallel_for(num_windows, threads, [&](std::size_t w) {
        SeededRng rng(seed, w);
        double t = rng.uniform(T / log_T, T);
        auto window = make_window(table, t, T);
        for (std::size_t j = 0; j < cols; ++j)
            zeta_vals[w * cols + j] = empirical_zeta_ratio(window, s_points[j]);
    });

    std::size_t m = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(64.0 * dpp_window_A)));
    SineDPPSampler sampler(dpp_window_A, m);
    std::vector<cd> dpp_vals(dpp_replicas * cols);
    parallel_for(dpp_replicas, threads, [&](std::size_t r) {
        SeededRng rng(seed, num_windows + r);
        for (;;) {
            auto cfg = sampler.sample(rng);
            if (!cfg.origin_excluded) continue;
            if (cfg.empty()) {
                for (std::size_t j = 0; j < cols; ++j)
                    dpp_vals[r * cols + j] = std::exp(cd(0.0, kPi) * s_points[j]);
                return;
            }
            auto ev = ProductEvaluator::make(std::move(cfg), std::nullopt, Prefactor::ExpIPiS,
                                             {dpp_window_A, dpp_window_A + 1.0, dpp_window_A + 2.0});
            for (std::size_t j = 0; j < cols; ++j)
                dpp_vals[r * cols + j] = eval_truncated(ev, s_points[j], ev.schedule.back());
            return;
        }
    });

    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<double> zm, za, dm, da;
        for (std::size_t w = 0; w < num_windows; ++w) {
            zm.push_back(std::abs(zeta_vals[w * cols + j]));
            za.push_back(std::arg(zeta_vals[w * cols + j]));
        }
        for (std::size_t r = 0; r < dpp_replicas; ++r) {
            dm.push_back(std::abs(dpp_vals[r * cols + j]));
            da.push_back(std::arg(dpp_vals[r * cols + j]));
        }
        report.ks_modulus.push_back(two_sample_ks(zm, dm));
        report.ks_argument.push_back(two_sample_ks(za, da));
    }
    return report;
}

}  // namespace stozeta
