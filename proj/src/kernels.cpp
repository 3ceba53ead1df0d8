#include "stozeta/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stozeta/linalg.hpp"

namespace stozeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularTol = 1e-8;

// sin(pi d)/(pi d), series near the removable singularity
double sinc_pi(double d) {
    double u = kPi * d;
    if (std::abs(d) < kSingularTol) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

// sin(k d / 2)/sin(d / 2) with the analytic diagonal limit k
double dirichlet_ratio(double k, double d) {
    if (std::abs(d) < kSingularTol) {
        return k * (1.0 - (k * k - 1.0) * d * d / 24.0);
    }
    return std::sin(0.5 * k * d) / std::sin(0.5 * d);
}

}  // namespace

CorrelationKernel CorrelationKernel::sine() { return {KernelKind::Sine, 0, 0.0}; }
CorrelationKernel CorrelationKernel::sine_plus() { return {KernelKind::SinePlus, 0, 0.0}; }
CorrelationKernel CorrelationKernel::sine_minus() { return {KernelKind::SineMinus, 0, 0.0}; }

CorrelationKernel CorrelationKernel::so_n_finite(std::size_t n, double psi) {
    require(n >= 2, "argument", "SOnFinite kernel requires n >= 2");
    return {KernelKind::SOnFinite, n, psi};
}

double CorrelationKernel::operator()(double x, double y) const {
    switch (kind_) {
        case KernelKind::Sine:
            return sinc_pi(x - y);
        case KernelKind::SinePlus:
            return sinc_pi(x - y) + sinc_pi(x + y);
        case KernelKind::SineMinus:
            return sinc_pi(x - y) - sinc_pi(x + y);
        case KernelKind::SOnFinite: {
            double k = static_cast<double>(n_) - 1.0;
            double sign = parity_even() ? 1.0 : -1.0;
            return dirichlet_ratio(k, y - x) + sign * dirichlet_ratio(k, y + x - 2.0 * psi_);
        }
    }
    return 0.0;
}

double kernel_eval(const CorrelationKernel& kernel, double x, double y) { return kernel(x, y); }

double correlation_det(const CorrelationKernel& kernel, std::span<const double> points) {
    std::size_t r = points.size();
    require(r >= 1, "argument", "correlation_det requires at least one point");
    std::vector<double> m(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m[j * r + i] = kernel(points[i], points[j]);
    // partial-pivot LU determinant
    double det = 1.0;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < r; ++i)
            if (std::abs(m[c * r + i]) > std::abs(m[c * r + piv])) piv = i;
        if (m[c * r + piv] == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t j = 0; j < r; ++j) std::swap(m[j * r + c], m[j * r + piv]);
            det = -det;
        }
        det *= m[c * r + c];
        for (std::size_t i = c + 1; i < r; ++i) {
            double f = m[c * r + i] / m[c * r + c];
            for (std::size_t j = c + 1; j < r; ++j) m[j * r + i] -= f * m[j * r + c];
        }
    }
    if (det < 0.0 && det > -1e-9) det = 0.0;
    return det;
}

CorrelationEstimate estimate_rho1(const std::vector<PointConfiguration>& samples, double window,
                                  std::size_t bins) {
    require(samples.size() >= 100, "estimation", "rho_1 estimation needs >= 100 samples");
    require(window > 0.0 && bins >= 2, "argument", "invalid rho_1 grid");
    const double width = 2.0 * window / static_cast<double>(bins);
    std::vector<double> sum(bins, 0.0), sumsq(bins, 0.0);
    for (const auto& cfg : samples) {
        std::vector<double> count(bins, 0.0);
        for (double p : cfg.points) {
            if (p < -window || p >= window) continue;
            auto b = static_cast<std::size_t>((p + window) / width);
            if (b < bins) count[b] += 1.0;
        }
        for (std::size_t b = 0; b < bins; ++b) {
            sum[b] += count[b];
            sumsq[b] += count[b] * count[b];
        }
    }
    const double R = static_cast<double>(samples.size());
    CorrelationEstimate est;
    est.order = 1;
    for (std::size_t b = 0; b < bins; ++b) {
        double center = -window + (static_cast<double>(b) + 0.5) * width;
        double mean = sum[b] / R;
        double var = std::max(0.0, sumsq[b] / R - mean * mean) * R / std::max(1.0, R - 1.0);
        est.grid.push_back(center);
        est.values.push_back(mean / width);
        est.std_errors.push_back(std::sqrt(var / R) / width);
    }
    return est;
}

CorrelationEstimate estimate_rho2_translation(const std::vector<PointConfiguration>& samples,
                                              double window, double max_separation,
                                              std::size_t bins) {
    require(samples.size() >= 100, "estimation", "rho_2 estimation needs >= 100 samples");
    require(window > 0.0 && max_separation > 0.0 && bins >= 2, "argument", "invalid rho_2 grid");
    const double width = max_separation / static_cast<double>(bins);
    std::vector<double> sum(bins, 0.0), sumsq(bins, 0.0);
    for (const auto& cfg : samples) {
        std::vector<double> count(bins, 0.0);
        const auto& p = cfg.points;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < -window || p[i] > window) continue;
            for (std::size_t j = i + 1; j < p.size(); ++j) {
                double d = p[j] - p[i];
                if (d >= max_separation) break;
                auto b = static_cast<std::size_t>(d / width);
                if (b < bins) count[b] += 1.0;
            }
            // pairs with the left member inside the window and d < max_sep,
            // scanning to the left as well to keep the estimator symmetric
            for (std::size_t j = i; j-- > 0;) {
                double d = p[i] - p[j];
                if (d >= max_separation) break;
                auto b = static_cast<std::size_t>(d / width);
                if (b < bins) count[b] += 1.0;
            }
        }
        for (std::size_t b = 0; b < bins; ++b) {
            sum[b] += count[b];
            sumsq[b] += count[b] * count[b];
        }
    }
    const double R = static_cast<double>(samples.size());
    const double norm = 2.0 * window * width * 2.0;  // both orientations counted
    CorrelationEstimate est;
    est.order = 2;
    for (std::size_t b = 0; b < bins; ++b) {
        double center = (static_cast<double>(b) + 0.5) * width;
        double mean = sum[b] / R;
        double var = std::max(0.0, sumsq[b] / R - mean * mean) * R / std::max(1.0, R - 1.0);
        est.grid.push_back(center);
        est.values.push_back(mean / norm);
        est.std_errors.push_back(std::sqrt(var / R) / norm);
    }
    return est;
}

Correlation2D estimate_rho2_grid(const std::vector<PointConfiguration>& samples, double window,
                                 std::size_t bins) {
    require(samples.size() >= 100, "estimation", "rho_2 estimation needs >= 100 samples");
    require(window > 0.0 && bins >= 2, "argument", "invalid rho_2 grid");
    const double width = 2.0 * window / static_cast<double>(bins);
    const std::size_t cells = bins * bins;
    std::vector<double> sum(cells, 0.0), sumsq(cells, 0.0);
    auto bin_of = [&](double x) -> std::ptrdiff_t {
        if (x < -window || x >= window) return -1;
        auto b = static_cast<std::size_t>((x + window) / width);
        return b < bins ? static_cast<std::ptrdiff_t>(b) : -1;
    };
    for (const auto& cfg : samples) {
        std::vector<double> count(cells, 0.0);
        const auto& p = cfg.points;
        for (std::size_t i = 0; i < p.size(); ++i) {
            auto bi = bin_of(p[i]);
            if (bi < 0) continue;
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (j == i) continue;
                auto bj = bin_of(p[j]);
                if (bj < 0) continue;
                count[static_cast<std::size_t>(bi) * bins + static_cast<std::size_t>(bj)] += 1.0;
            }
        }
        for (std::size_t c = 0; c < cells; ++c) {
            sum[c] += count[c];
            sumsq[c] += count[c] * count[c];
        }
    }
    const double R = static_cast<double>(samples.size());
    const double norm = width * width;
    Correlation2D est;
    for (std::size_t b = 0; b < bins; ++b)
        est.centers.push_back(-window + (static_cast<double>(b) + 0.5) * width);
    est.values.resize(cells);
    est.std_errors.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        double mean = sum[c] / R;
        double var = std::max(0.0, sumsq[c] / R - mean * mean) * R / std::max(1.0, R - 1.0);
        est.values[c] = mean / norm;
        est.std_errors[c] = std::sqrt(var / R) / norm;
    }
    return est;
}

CorrelationEstimate estimate_correlations(const std::vector<PointConfiguration>& samples, int r,
                                          double window, std::size_t bins) {
    require(r == 1 || r == 2, "argument", "estimate_correlations supports r in {1, 2}");
    if (r == 1) return estimate_rho1(samples, window, bins);
    auto est = estimate_rho2_translation(samples, window, window, bins);
    for (double d : est.grid) est.theory.push_back(1.0 - sinc_pi(d) * sinc_pi(d));
    return est;
}

SineDPPSampler::SineDPPSampler(double A, std::size_t m) : A_(A), m_(m) {
    require(A > 0.0, "argument", "sine DPP window must be positive");
    require(m >= 64, "argument", "sine DPP grid needs m >= 64");
    const double h = 2.0 * A / static_cast<double>(m);
    std::vector<double> gram(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        double xi = -A + (static_cast<double>(i) + 0.5) * h;
        for (std::size_t j = i; j < m; ++j) {
            double xj = -A + (static_cast<double>(j) + 0.5) * h;
            double v = h * sinc_pi(xi - xj);
            gram[j * m + i] = v;
            gram[i * m + j] = v;
        }
    }
    eigenvalues_ = linalg::symmetric_eigen(gram, static_cast<int>(m));
    for (double lam : eigenvalues_) {
        if (lam < -1e-9 || lam > 1.0 + 1e-9) {
            fail("numeric", "sine DPP discretization too coarse: eigenvalue " +
                                std::to_string(lam) + " outside [0, 1]");
        }
    }
    eigenvectors_ = std::move(gram);
}

PointConfiguration SineDPPSampler::sample(SeededRng& rng) const {
    const std::size_t m = m_;
    const double A = A_;
    const double h = 2.0 * A / static_cast<double>(m);
    // Bernoulli selection of eigenfunctions, fixed ascending order
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < m; ++k) {
        double lam = std::clamp(eigenvalues_[k], 0.0, 1.0);
        if (rng.uniform01() < lam) chosen.push_back(k);
    }
    std::size_t K = chosen.size();
    if (K == 0) return PointConfiguration::from_values({});
    // W: m x K column block of selected eigenvectors
    std::vector<double> W(m * K);
    for (std::size_t c = 0; c < K; ++c)
        std::copy_n(eigenvectors_.data() + chosen[c] * m, m, W.data() + c * m);
    std::vector<double> picked;
    picked.reserve(K);
    for (std::size_t t = K; t > 0; --t) {
        // row norms give the next-point distribution
        std::vector<double> rownorm(m, 0.0);
        for (std::size_t c = 0; c < t; ++c) {
            const double* col = W.data() + c * m;
            for (std::size_t i = 0; i < m; ++i) rownorm[i] += col[i] * col[i];
        }
        double total = 0.0;
        for (double v : rownorm) total += v;
        double u = rng.uniform01() * total;
        std::size_t idx = m - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            acc += rownorm[i];
            if (u < acc) {
                idx = i;
                break;
            }
        }
        picked.push_back(-A + (static_cast<double>(idx) + 0.5) * h);
        if (t == 1) break;
        // eliminate the coordinate idx: pivot on the largest component
        std::size_t piv = 0;
        for (std::size_t c = 1; c < t; ++c)
            if (std::abs(W[c * m + idx]) > std::abs(W[piv * m + idx])) piv = c;
        double pivval = W[piv * m + idx];
        for (std::size_t c = 0; c < t; ++c) {
            if (c == piv) continue;
            double f = W[c * m + idx] / pivval;
            double* col = W.data() + c * m;
            const double* pcol = W.data() + piv * m;
            for (std::size_t i = 0; i < m; ++i) col[i] -= f * pcol[i];
        }
        if (piv != t - 1) std::copy_n(W.data() + (t - 1) * m, m, W.data() + piv * m);
        // re-orthonormalize the remaining t-1 columns (modified Gram-Schmidt)
        for (std::size_t c = 0; c < t - 1; ++c) {
            double* col = W.data() + c * m;
            for (std::size_t prev = 0; prev < c; ++prev) {
                const double* pc = W.data() + prev * m;
                double dot = 0.0;
                for (std::size_t i = 0; i < m; ++i) dot += col[i] * pc[i];
                for (std::size_t i = 0; i < m; ++i) col[i] -= dot * pc[i];
            }
            double nrm = 0.0;
            for (std::size_t i = 0; i < m; ++i) nrm += col[i] * col[i];
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12) fail("numeric", "sine DPP conditional basis degenerated");
            for (std::size_t i = 0; i < m; ++i) col[i] /= nrm;
        }
    }
    return PointConfiguration::from_values(std::move(picked));
}

PointConfiguration sample_sine_dpp(double A, std::size_t m, SeededRng& rng) {
    return SineDPPSampler(A, m).sample(rng);
}

}  // namespace stozeta
