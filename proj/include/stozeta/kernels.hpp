#pragma once

#include <span>
#include <vector>

#include "stozeta/point_process.hpp"
#include "stozeta/rng.hpp"

namespace stozeta {

enum class KernelKind { Sine, SinePlus, SineMinus, SOnFinite };

// Correlation kernels of the circular examples.  Sine takes unfolded
// coordinates; SinePlus/SineMinus live on the positive half-line (unfolded);
// SOnFinite takes eigenangles theta in [psi, psi + pi].
class CorrelationKernel {
public:
    static CorrelationKernel sine();
    static CorrelationKernel sine_plus();
    static CorrelationKernel sine_minus();
    static CorrelationKernel so_n_finite(std::size_t n, double psi);

    KernelKind kind() const noexcept { return kind_; }
    std::size_t n() const noexcept { return n_; }
    double psi() const noexcept { return psi_; }
    bool parity_even() const noexcept { return n_ % 2 == 0; }

    double operator()(double x, double y) const;

private:
    CorrelationKernel(KernelKind kind, std::size_t n, double psi)
        : kind_(kind), n_(n), psi_(psi) {}

    KernelKind kind_;
    std::size_t n_;
    double psi_;
};

double kernel_eval(const CorrelationKernel& kernel, double x, double y);

// det(K(x_a, x_b)); clamped to 0 when the value is a numerical zero
// (above -1e-9).
double correlation_det(const CorrelationKernel& kernel, std::span<const double> points);

struct CorrelationEstimate {
    int order = 1;
    // order 1: grid points; order 2 (translation-averaged): separations
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> std_errors;
    std::vector<double> theory;  // empty when no closed form was attached
};

// rho_1 histogram estimator on an equispaced grid over [-window, window].
CorrelationEstimate estimate_rho1(const std::vector<PointConfiguration>& samples, double window,
                                  std::size_t bins);

// Translation-averaged rho_2 on the difference variable, for rotation- or
// translation-invariant ensembles: pairs (x, y) with x in [-window, window]
// binned by y - x over (0, max_separation].
CorrelationEstimate estimate_rho2_translation(const std::vector<PointConfiguration>& samples,
                                              double window, double max_separation,
                                              std::size_t bins);

// rho_2 on a full 2-d grid (for ensembles without translation invariance);
// grid holds x then y of each cell center, row-major.
struct Correlation2D {
    std::vector<double> centers;  // shared axis
    std::vector<double> values;   // bins x bins, row-major
    std::vector<double> std_errors;
};
Correlation2D estimate_rho2_grid(const std::vector<PointConfiguration>& samples, double window,
                                 std::size_t bins);

// dispatcher per the operation contract: r in {1, 2}, >= 100 samples
CorrelationEstimate estimate_correlations(const std::vector<PointConfiguration>& samples, int r,
                                          double window, std::size_t bins);

// Sine-kernel determinantal sampler on [-A, A]: midpoint discretization of
// the integral operator, eigendecomposition (done once at construction),
// Bernoulli selection of eigenfunctions, and sequential conditional (HKPV)
// sampling on the grid.  sample() is const and safe to call from parallel
// replicas with per-replica rngs.
class SineDPPSampler {
public:
    SineDPPSampler(double A, std::size_t m);

    PointConfiguration sample(SeededRng& rng) const;

    double window() const noexcept { return A_; }
    std::size_t grid_size() const noexcept { return m_; }
    const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

private:
    double A_;
    std::size_t m_;
    std::vector<double> eigenvalues_;   // ascending, within [0, 1]
    std::vector<double> eigenvectors_;  // m x m column-major
};

// one-shot convenience wrapper
PointConfiguration sample_sine_dpp(double A, std::size_t m, SeededRng& rng);

}  // namespace stozeta
