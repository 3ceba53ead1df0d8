#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "stozeta/ensembles.hpp"

namespace stozeta {

// Strict "a+bi" grammar: sign, decimal, optional signed imaginary part ending
// in 'i'.  Examples: "2", "-1.5", "0+1i", "1.25-0.5i", "i" is rejected.
std::complex<double> parse_complex(const std::string& text);
std::string format_complex(std::complex<double> z);

enum class CommandKind { Sample, Evaluate, Converge, PropCrit, Kernels, ZetaCompare };

struct ExperimentConfig {
    CommandKind command = CommandKind::Sample;
    EnsembleSpec ensemble;
    std::uint64_t seed = 1;
    std::int64_t replicas = 1;
    int threads = 0;  // 0: default_threads()
    std::string output_path;
    std::string format = "csv";  // csv | json
    bool assert_verdict = false;

    // converge / evaluate / zeta-compare parameters
    std::vector<std::size_t> n_list;
    std::vector<std::complex<double>> s_points;
    // sample/evaluate grid parameters
    double grid_min = -10.0;
    double grid_max = 10.0;
    std::size_t grid_count = 41;
    // kernels command
    int correlation_order = 1;
    double window = 10.0;
    std::size_t bins = 50;
    // zeta command
    std::string zeros_path;
    double T = 1000.0;
    double cap_override = 0.0;
    double dpp_window = 8.0;

    void validate() const;
};

// Parses the JSON config file (optional) and applies it; unknown keys are
// rejected.  CLI flags are applied on top by the tool.
void apply_config_json(ExperimentConfig& config, const std::string& json_text);

// Writes atomically: temp file in the same directory, then rename.
void atomic_write_file(const std::string& path, const std::string& contents);

// "0.5,1.5,2" -> vector
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<std::complex<double>> parse_complex_list(const std::string& text);

}  // namespace stozeta
