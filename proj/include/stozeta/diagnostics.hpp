#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "stozeta/compensators.hpp"
#include "stozeta/ensembles.hpp"
#include "stozeta/point_process.hpp"

namespace stozeta {

// Welford-style online moments with a commutative-associative merge, so the
// replica reduction is independent of grouping.
struct OnlineMoments {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const OnlineMoments& other);
    double variance_unbiased() const;  // 0 for count < 2
};

struct CountingStats {
    std::vector<double> grid;
    std::vector<OnlineMoments> moments;             // one per grid point
    std::vector<double> compensator_cumulative;     // empty when none attached
    std::int64_t replicas = 0;
    std::uint64_t seed = 0;
};

CountingStats counting_stats(const EnsembleSpec& spec, const std::vector<double>& grid,
                             std::int64_t replicas, std::uint64_t seed, int threads,
                             const CompensatorMeasure* compensator = nullptr);

struct BoundFit {
    double C_hat = 0.0;
    double exponent_hat = 0.0;
    double max_violation_ratio = 0.0;
    bool pass = false;
};

struct PropCritReport {
    BoundFit mean_fit;      // exponent alpha
    BoundFit variance_fit;  // exponent 2 alpha
    BoundFit interval_fit;  // exponent nu
    double alpha_hat = 0.0;
    double nu_hat = 0.0;
    bool pass = false;  // alpha + nu < 1 with all three bound fits holding
};

PropCritReport fit_prop_crit(const CountingStats& stats, const CompensatorMeasure& M0);

// two-sample Kolmogorov-Smirnov statistic (inputs need not be sorted)
double two_sample_ks(std::vector<double> a, std::vector<double> b);

// two-sample critical value c(alpha) sqrt((m+n)/(m n)); alpha in {0.05, 0.01}
double ks_critical_value(std::size_t m, std::size_t n, double alpha);

struct ConvergencePair {
    std::size_t n_low = 0;
    std::size_t n_high = 0;
    std::vector<double> ks_modulus;   // one per s point
    std::vector<double> ks_argument;  // one per s point
};

struct ConvergenceReport {
    std::vector<std::complex<double>> s_points;
    std::vector<ConvergencePair> pairs;
    std::int64_t replicas = 0;
    std::uint64_t seed = 0;
    bool distances_decreasing = false;  // max KS per pair decreases
    double final_max_ks = 0.0;
    std::string to_json() const;
};

// Stabilization across n: for each consecutive pair in n_list, the two-sample
// KS distance between the empirical laws of f_n(s), split into modulus and
// argument.  The evaluated functional is xi_n for circular ensembles and the
// fully compensated product for GBetaE scalings.
ConvergenceReport marginal_convergence(const EnsembleSpec& base, const std::vector<std::size_t>& n_list,
                                       const std::vector<std::complex<double>>& s_points,
                                       std::int64_t replicas, std::uint64_t seed, int threads);

struct TightnessReport {
    std::vector<std::size_t> n_list;
    std::vector<double> q50, q90, q99;  // per n
    double ratio_q99 = 0.0;             // last / first
    bool bounded = false;               // ratio < 2
    std::int64_t replicas = 0;
    std::uint64_t seed = 0;
};

TightnessReport tightness_probe(const EnsembleSpec& base, const std::vector<std::size_t>& n_list,
                                double compact_radius, std::int64_t replicas, std::uint64_t seed,
                                int threads);

struct Histogram {
    std::vector<double> edges;   // bins + 1
    std::vector<double> masses;  // probability mass per bin
    std::int64_t total_gaps = 0;
};

// Nearest-neighbor gaps within [-window, window], normalized to unit mean,
// binned over [0, 4] by default.
Histogram spacing_histogram(const std::vector<PointConfiguration>& samples, double window,
                            std::size_t bins = 50, double range_max = 4.0);

// L1 distance between histogram masses and the same-bin masses of e^{-x}
double histogram_l1_vs_exponential(const Histogram& hist);

}  // namespace stozeta
