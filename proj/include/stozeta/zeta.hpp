#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "stozeta/diagnostics.hpp"
#include "stozeta/point_process.hpp"

namespace stozeta {

// Ascending positive ordinates of zeta zeros on the critical line.
struct ZeroTable {
    std::vector<double> ordinates;
    std::string source;

    std::size_t count() const noexcept { return ordinates.size(); }
};

// Text format: one decimal ordinate per line, ascending, '#' comments ignored.
ZeroTable ingest_zeros(const std::string& path);
ZeroTable parse_zeros(std::istream& is, const std::string& source_name);
void write_zeros(const ZeroTable& table, std::ostream& os);

// main term of the zero-counting function: (u / 2 pi) log(u / (2 pi e)),
// with 0 log 0 := 0
double counting_main_term(double u);

struct ZetaWindow {
    double t = 0.0;
    double T = 0.0;
    double log_scale = 0.0;   // log T
    double cap = 0.0;         // points kept within [-cap, cap], default log^2 T
    PointConfiguration points;  // {(gamma - t) log T / (2 pi)}
};

// Rescaled window around height t; requires T >= 1000, t in [T/log T, T], and
// table coverage of [t - 2 pi log T, t + 2 pi log T].  cap_override > 0
// replaces the default log^2 T cap.
ZetaWindow make_window(const ZeroTable& table, double t, double T, double cap_override = 0.0);

// e^{i pi s} prod over window points of (1 - s/gamma).  A window point within
// 1e-9 of zero is handled by shifting t minimally; the applied shift (in t
// units) is reported through t_shift when given.
std::complex<double> empirical_zeta_ratio(const ZetaWindow& window, std::complex<double> s,
                                          double* t_shift = nullptr);

struct ZetaCompareReport {
    std::vector<std::complex<double>> s_points;
    std::vector<double> ks_modulus;
    std::vector<double> ks_argument;
    std::size_t num_windows = 0;
    std::size_t dpp_replicas = 0;
    double T = 0.0;
    double dpp_window = 0.0;
    std::uint64_t seed = 0;
    std::string to_json() const;
};

// Empirical law of the zeta-ratio over random windows against the law of the
// sine-kernel xi over DPP samples; KS per s on modulus and argument.  The
// comparison is reported, not asserted (the underlying conjecture is open).
ZetaCompareReport compare_to_sine_kernel(const ZeroTable& table, double T, std::size_t num_windows,
                                         const std::vector<std::complex<double>>& s_points,
                                         std::uint64_t seed, int threads, double dpp_window_A = 8.0,
                                         std::size_t dpp_replicas = 0);

}  // namespace stozeta
