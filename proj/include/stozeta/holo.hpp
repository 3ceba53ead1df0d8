#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "stozeta/compensators.hpp"
#include "stozeta/point_process.hpp"

namespace stozeta {

enum class Prefactor { None, ExpIPiS };

// Evaluator for the compensated truncated products
//   f_A(s) = [e^{i pi s}] exp(s * pv(M0, A)) prod_{rho in X, |rho| <= A} (1 - s/rho).
// Schedule entries are shifted by a configuration-hash offset in (0, 0.1) and
// nudged off any point of the configuration, so truncation never lands on an
// atom.
struct ProductEvaluator {
    PointConfiguration config;
    std::optional<CompensatorMeasure> compensator;
    Prefactor prefactor = Prefactor::None;
    std::vector<double> schedule;

    static std::vector<double> default_schedule();  // {10, 20, 40, 80, 160}

    static ProductEvaluator make(PointConfiguration config,
                                 std::optional<CompensatorMeasure> compensator,
                                 Prefactor prefactor = Prefactor::None,
                                 std::vector<double> schedule = default_schedule());
};

struct HoloValue {
    std::complex<double> value;
    std::complex<double> at;
    double A_used = 0.0;
    bool converged = false;
};

std::complex<double> eval_truncated(const ProductEvaluator& ev, std::complex<double> s, double A);

// log of the truncated product (principal-branch sum); shared by the ratio
// statistic so quotients never overflow
std::complex<double> log_eval_truncated(const ProductEvaluator& ev, std::complex<double> s,
                                        double A);

// Weierstrass-regularized equivalent over the window [-A_max, A_max]:
//   exp(s * I) prod (1 - s/rho) e^{s/rho},
//   I = integral over [-A_max, A_max] of (M0(x) - M_X(x)) / x^2 dx,
// with M_X integrated in closed form between consecutive points.
std::complex<double> eval_weierstrass(const PointConfiguration& config,
                                      const CompensatorMeasure& M0, std::complex<double> s,
                                      double A_max);

// Walks the A-schedule; converged when the last two relative steps are below
// rel_tol.  Non-convergence is reported through the flag, not an error.
HoloValue eval_limit(const ProductEvaluator& ev, std::complex<double> s, double rel_tol = 0.02);

// pv(M0, A) + sum 1/(s - rho) [+ i pi with the ExpIPiS prefactor];
// defined for s off the real axis only.
std::complex<double> log_derivative(const ProductEvaluator& ev, std::complex<double> s, double A);

// prod f(s_i) / prod f(t_j) in log space; every t_j must be non-real
std::complex<double> ratio_statistic(const ProductEvaluator& ev,
                                     const std::vector<std::complex<double>>& s_list,
                                     const std::vector<std::complex<double>>& t_list, double A);

// Exact circular xi_n(s) = e^{i pi s} prod_j sin(pi (rho_j - s)/n) / sin(pi rho_j / n)
// over the unfolded angles rho_j = n theta_j / (2 pi): the principal-value
// product over the full n-periodic configuration in closed form.  When all n
// angles are present this equals Z_n(e^{2 i pi s / n}) / Z_n(1); with a
// removed deterministic point the two differ by e^{i pi s / n} -> 1.
std::complex<double> xi_circular(const CircleConfiguration& circle, std::complex<double> s);

struct Rect {
    double x0, x1, y0, y1;
};

// Winding number of f along the rectangle boundary: trapezoidal integration
// of f'/f with central-difference derivatives (step = perimeter / (10 m)).
// The result must sit within 0.1 of an integer, else a contour error.
int count_zeros_rect(const std::function<std::complex<double>(std::complex<double>)>& f,
                     const Rect& rect, int m);

}  // namespace stozeta
