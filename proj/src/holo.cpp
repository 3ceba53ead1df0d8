#include "stozeta/holo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "stozeta/quadrature.hpp"

namespace stozeta {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kAtomClearance = 1e-9;

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

// offset in (0, 0.1) derived from the configuration, so truncation values
// avoid atoms in a reproducible way
double schedule_offset(const PointConfiguration& cfg) {
    std::uint64_t h = fnv1a(cfg.points.data(), cfg.points.size() * sizeof(double));
    std::size_t n = cfg.points.size();
    h = fnv1a(&n, sizeof(n), h);
    double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
    return 1e-4 + u * (0.1 - 2e-4);
}

double nudge_off_points(const PointConfiguration& cfg, double A) {
    for (int i = 0; i < 64; ++i) {
        bool clear = true;
        for (double sign : {1.0, -1.0}) {
            double edge = sign * A;
            auto lo = std::lower_bound(cfg.points.begin(), cfg.points.end(), edge - kAtomClearance);
            if (lo != cfg.points.end() && *lo <= edge + kAtomClearance) clear = false;
        }
        if (clear) return A;
        A += 1e-6;
    }
    return A;
}

void check_origin(const PointConfiguration& cfg) {
    require(cfg.origin_excluded, "argument",
            "configuration has a point within 1e-12 of zero; products are undefined");
}

}  // namespace

std::vector<double> ProductEvaluator::default_schedule() { return {10.0, 20.0, 40.0, 80.0, 160.0}; }

ProductEvaluator ProductEvaluator::make(PointConfiguration config,
                                        std::optional<CompensatorMeasure> compensator,
                                        Prefactor prefactor, std::vector<double> schedule) {
    require(!schedule.empty(), "argument", "schedule must be non-empty");
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        require(schedule[i] > schedule[i - 1], "argument", "schedule must be strictly increasing");
    }
    ProductEvaluator ev;
    double offset = schedule_offset(config);
    ev.config = std::move(config);
    ev.compensator = std::move(compensator);
    ev.prefactor = prefactor;
    ev.schedule.reserve(schedule.size());
    for (double A : schedule) ev.schedule.push_back(nudge_off_points(ev.config, A + offset));
    return ev;
}

std::complex<double> log_eval_truncated(const ProductEvaluator& ev, std::complex<double> s,
                                        double A) {
    check_origin(ev.config);
    cd log_sum = 0.0;
    for (double rho : ev.config.in_symmetric_window(A)) {
        log_sum += std::log(1.0 - s / rho);
    }
    if (ev.compensator) log_sum += s * ev.compensator->pv_integral(A);
    if (ev.prefactor == Prefactor::ExpIPiS) log_sum += cd(0.0, kPi) * s;
    return log_sum;
}

std::complex<double> eval_truncated(const ProductEvaluator& ev, std::complex<double> s, double A) {
    check_origin(ev.config);
    // a zero factor annihilates the product regardless of the rest
    for (double rho : ev.config.in_symmetric_window(A)) {
        if (s == cd(rho, 0.0)) return 0.0;
    }
    return std::exp(log_eval_truncated(ev, s, A));
}

std::complex<double> eval_weierstrass(const PointConfiguration& config,
                                      const CompensatorMeasure& M0, std::complex<double> s,
                                      double A_max) {
    check_origin(config);
    auto window = config.in_symmetric_window(A_max);
    // product part
    cd log_prod = 0.0;
    bool zero = false;
    for (double rho : window) {
        if (s == cd(rho, 0.0)) zero = true;
        log_prod += std::log(1.0 - s / rho) + s / rho;
    }
    // integral of M0(x)/x^2 over [-A, A]: by parts on each side of [-1, 1],
    // = -M0(A)/A - M0(-A)/A + pv_integral(A)
    double m0_part = -(M0.cumulative(A_max) + M0.cumulative(-A_max)) / A_max +
                     M0.pv_integral(A_max);
    // integral of M_X(x)/x^2: M_X is constant between points and zero around
    // the origin; each positive point rho contributes 1/rho - 1/A, each
    // negative point -(1/|rho| - 1/A)
    double mx_part = 0.0;
    for (double rho : window) {
        mx_part += (rho > 0.0 ? 1.0 : -1.0) * (1.0 / std::abs(rho) - 1.0 / A_max);
    }
    cd exponent = s * (m0_part - mx_part);
    if (zero) return 0.0;
    return std::exp(exponent + log_prod);
}

HoloValue eval_limit(const ProductEvaluator& ev, std::complex<double> s, double rel_tol) {
    require(ev.schedule.size() >= 3, "argument", "eval_limit needs a schedule with >= 3 entries");
    HoloValue out;
    out.at = s;
    std::vector<cd> values;
    values.reserve(ev.schedule.size());
    for (double A : ev.schedule) {
        values.push_back(eval_truncated(ev, s, A));
        out.A_used = A;
    }
    std::size_t k = values.size();
    auto rel_step = [&](std::size_t i) {
        double denom = std::abs(values[i]);
        if (denom == 0.0) return std::abs(values[i] - values[i - 1]) == 0.0 ? 0.0 : 1.0;
        return std::abs(values[i] - values[i - 1]) / denom;
    };
    out.value = values.back();
    out.converged = rel_step(k - 1) < rel_tol && rel_step(k - 2) < rel_tol;
    return out;
}

std::complex<double> log_derivative(const ProductEvaluator& ev, std::complex<double> s, double A) {
    require(s.imag() != 0.0, "domain", "log_derivative is well-defined for s off the real axis");
    check_origin(ev.config);
    cd sum = 0.0;
    for (double rho : ev.config.in_symmetric_window(A)) sum += 1.0 / (s - rho);
    if (ev.compensator) sum += ev.compensator->pv_integral(A);
    if (ev.prefactor == Prefactor::ExpIPiS) sum += cd(0.0, kPi);
    return sum;
}

std::complex<double> ratio_statistic(const ProductEvaluator& ev,
                                     const std::vector<std::complex<double>>& s_list,
                                     const std::vector<std::complex<double>>& t_list, double A) {
    require(s_list.size() == t_list.size(), "argument",
            "ratio_statistic requires equally long numerator and denominator lists");
    for (const auto& t : t_list) {
        require(t.imag() != 0.0, "domain", "ratio denominators must be non-real");
    }
    cd log_ratio = 0.0;
    for (const auto& s : s_list) {
        for (double rho : ev.config.in_symmetric_window(A)) {
            if (s == cd(rho, 0.0)) return 0.0;
        }
        log_ratio += log_eval_truncated(ev, s, A);
    }
    for (const auto& t : t_list) log_ratio -= log_eval_truncated(ev, t, A);
    return std::exp(log_ratio);
}

std::complex<double> xi_circular(const CircleConfiguration& circle, std::complex<double> s) {
    require(circle.n >= 1, "argument", "xi_circular requires n >= 1");
    const double n = static_cast<double>(circle.n);
    cd log_sum = cd(0.0, kPi) * s;
    for (double theta : circle.angles) {
        require(theta != 0.0, "argument", "xi_circular: angle exactly 0 (point at 1 not removed)");
        // rho = n theta / (2 pi); sin(pi (rho - s)/n) / sin(pi rho / n)
        cd num = std::sin(0.5 * theta - kPi * s / n);
        cd den = std::sin(cd(0.5 * theta, 0.0));
        if (num == cd(0.0)) return 0.0;
        log_sum += std::log(num / den);
    }
    return std::exp(log_sum);
}

int count_zeros_rect(const std::function<std::complex<double>(std::complex<double>)>& f,
                     const Rect& rect, int m) {
    require(m >= 256, "argument", "count_zeros_rect needs m >= 256 contour points");
    require(rect.x1 > rect.x0 && rect.y1 > rect.y0, "argument", "degenerate rectangle");
    const double w = rect.x1 - rect.x0;
    const double h = rect.y1 - rect.y0;
    const double perimeter = 2.0 * (w + h);
    const double fd_step = perimeter / (10.0 * static_cast<double>(m));
    auto point_at = [&](double t) -> cd {
        // arclength parametrization, counterclockwise from the lower-left corner
        double u = std::fmod(t, perimeter);
        if (u < 0.0) u += perimeter;
        if (u < w) return {rect.x0 + u, rect.y0};
        u -= w;
        if (u < h) return {rect.x1, rect.y0 + u};
        u -= h;
        if (u < w) return {rect.x1 - u, rect.y1};
        u -= w;
        return {rect.x0, rect.y1 - u};
    };
    auto logderiv = [&](cd z) -> cd {
        cd fz = f(z);
        cd dfz = (f(z + fd_step) - f(z - fd_step)) / (2.0 * fd_step);
        return dfz / fz;
    };
    // trapezoid over m segments along the contour
    cd integral = 0.0;
    const double dt = perimeter / static_cast<double>(m);
    cd z_prev = point_at(0.0);
    cd g_prev = logderiv(z_prev);
    for (int k = 1; k <= m; ++k) {
        cd z = point_at(dt * static_cast<double>(k));
        cd g = logderiv(z);
        integral += 0.5 * (g + g_prev) * (z - z_prev);
        z_prev = z;
        g_prev = g;
    }
    cd winding = integral / cd(0.0, 2.0 * kPi);
    double rounded = std::round(winding.real());
    double residual = std::abs(winding - cd(rounded, 0.0));
    if (residual > 0.1) {
        fail("contour", "count_zeros_rect: winding residual " + std::to_string(residual) +
                            " exceeds 0.1 (contour too coarse or zero too close)");
    }
    return static_cast<int>(rounded);
}

}  // namespace stozeta
