#include "stozeta/compensators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stozeta/quadrature.hpp"

namespace stozeta {

namespace {

constexpr double kPi = std::numbers::pi;

double semicircle_arg_scale(std::int64_t n, double E) {
    return 2.0 * kPi / (static_cast<double>(n) * std::sqrt(4.0 - E * E));
}

}  // namespace

const char* to_string(CompensatorKind kind) {
    switch (kind) {
        case CompensatorKind::CircularLebesgue: return "circular-lebesgue";
        case CompensatorKind::BulkSemicircle: return "bulk-semicircle";
        case CompensatorKind::BulkLimit: return "bulk-limit";
        case CompensatorKind::EdgeFinite: return "edge-finite";
        case CompensatorKind::EdgeLimit: return "edge-limit";
    }
    return "unknown";
}

CompensatorMeasure CompensatorMeasure::circular_lebesgue(double support_cap) {
    require(support_cap > 1.0, "argument", "support cap must exceed 1");
    return {CompensatorKind::CircularLebesgue, 0, 0.0, support_cap};
}

CompensatorMeasure CompensatorMeasure::bulk_semicircle(std::int64_t n, double E) {
    require(n >= 1, "argument", "bulk_semicircle requires n >= 1");
    require(E > -2.0 && E < 2.0, "argument", "bulk_semicircle requires E in (-2, 2)");
    return {CompensatorKind::BulkSemicircle, n, E, 0.0};
}

CompensatorMeasure CompensatorMeasure::bulk_limit() {
    return {CompensatorKind::BulkLimit, 0, 0.0, std::numeric_limits<double>::infinity()};
}

CompensatorMeasure CompensatorMeasure::edge_finite(std::int64_t n) {
    require(n >= 1, "argument", "edge_finite requires n >= 1");
    return {CompensatorKind::EdgeFinite, n, 0.0, 0.0};
}

CompensatorMeasure CompensatorMeasure::edge_limit() {
    return {CompensatorKind::EdgeLimit, 0, 0.0, 0.0};
}

double CompensatorMeasure::density(double x) const {
    if (std::abs(x) <= 1.0) return 0.0;
    switch (kind_) {
        case CompensatorKind::CircularLebesgue:
            return std::abs(x) <= support_cap_ ? 1.0 : 0.0;
        case CompensatorKind::BulkLimit:
            return 1.0;
        case CompensatorKind::BulkSemicircle: {
            double u = energy_ + semicircle_arg_scale(n_, energy_) * x;
            return std::sqrt(std::max(0.0, 4.0 - u * u)) / std::sqrt(4.0 - energy_ * energy_);
        }
        case CompensatorKind::EdgeFinite: {
            if (x > -1.0) return 0.0;
            double n13 = std::cbrt(static_cast<double>(n_));
            double u = 2.0 + 2.0 * kPi * x / (n13 * n13);
            return n13 * std::sqrt(std::max(0.0, 4.0 - u * u));
        }
        case CompensatorKind::EdgeLimit:
            return x <= -1.0 ? std::sqrt(-8.0 * kPi * x) : 0.0;
    }
    return 0.0;
}

double CompensatorMeasure::support_lower() const {
    switch (kind_) {
        case CompensatorKind::CircularLebesgue:
            return -support_cap_;
        case CompensatorKind::BulkLimit:
            return -std::numeric_limits<double>::infinity();
        case CompensatorKind::BulkSemicircle:
            return (-2.0 - energy_) / semicircle_arg_scale(n_, energy_);
        case CompensatorKind::EdgeFinite: {
            double n23 = std::cbrt(static_cast<double>(n_));
            n23 *= n23;
            return -2.0 * n23 / kPi;
        }
        case CompensatorKind::EdgeLimit:
            return -std::numeric_limits<double>::infinity();
    }
    return -std::numeric_limits<double>::infinity();
}

double CompensatorMeasure::support_upper() const {
    switch (kind_) {
        case CompensatorKind::CircularLebesgue:
            return support_cap_;
        case CompensatorKind::BulkLimit:
            return std::numeric_limits<double>::infinity();
        case CompensatorKind::BulkSemicircle:
            return (2.0 - energy_) / semicircle_arg_scale(n_, energy_);
        case CompensatorKind::EdgeFinite:
        case CompensatorKind::EdgeLimit:
            return -1.0;
    }
    return std::numeric_limits<double>::infinity();
}

double CompensatorMeasure::cumulative(double x) const {
    if (std::abs(x) <= 1.0) return 0.0;
    switch (kind_) {
        case CompensatorKind::CircularLebesgue:
        case CompensatorKind::BulkLimit: {
            double r = std::min(std::abs(x), support_cap_);
            return x > 0.0 ? r - 1.0 : -(r - 1.0);
        }
        case CompensatorKind::EdgeLimit: {
            if (x > -1.0) return 0.0;
            // antiderivative of sqrt(8 pi t): (2/3) sqrt(8 pi) t^{3/2}
            double r = -x;
            return -(2.0 / 3.0) * std::sqrt(8.0 * kPi) * (std::pow(r, 1.5) - 1.0);
        }
        case CompensatorKind::BulkSemicircle:
        case CompensatorKind::EdgeFinite: {
            double lo, hi;
            if (x > 0.0) {
                lo = std::max(1.0, support_lower());
                hi = std::min(x, support_upper());
            } else {
                lo = std::max(x, support_lower());
                hi = std::min(-1.0, support_upper());
            }
            if (lo >= hi) return 0.0;
            double v = integrate([this](double t) { return density(t); }, lo, hi, 1e-10).value;
            return x > 0.0 ? v : -v;
        }
    }
    return 0.0;
}

double CompensatorMeasure::pv_integral(double A) const {
    if (A <= 1.0) return 0.0;
    switch (kind_) {
        case CompensatorKind::CircularLebesgue:
        case CompensatorKind::BulkLimit:
            return 0.0;  // odd integrand over a symmetric support
        case CompensatorKind::EdgeLimit: {
            // integral over [-A,-1] of sqrt(-8 pi x)/x dx = 4 sqrt(2 pi) (1 - sqrt(A))
            return 4.0 * std::sqrt(2.0 * kPi) * (1.0 - std::sqrt(A));
        }
        case CompensatorKind::BulkSemicircle:
        case CompensatorKind::EdgeFinite: {
            double total = 0.0;
            double lo = std::max(1.0, support_lower());
            double hi = std::min(A, support_upper());
            if (lo < hi) {
                total += integrate([this](double t) { return density(t) / t; }, lo, hi, 1e-10).value;
            }
            lo = std::max(-A, support_lower());
            hi = std::min(-1.0, support_upper());
            if (lo < hi) {
                total += integrate([this](double t) { return density(t) / t; }, lo, hi, 1e-10).value;
            }
            return total;
        }
    }
    return 0.0;
}

double CompensatorMeasure::interval_measure(double a, double b) const {
    require(a <= b, "argument", "interval_measure requires a <= b");
    switch (kind_) {
        case CompensatorKind::CircularLebesgue:
        case CompensatorKind::BulkLimit: {
            double cap = support_cap_;
            auto piece = [&](double lo, double hi) {
                double l = std::max(lo, std::max(a, -cap));
                double h = std::min(hi, std::min(b, cap));
                return std::max(0.0, h - l);
            };
            return piece(-std::numeric_limits<double>::infinity(), -1.0) +
                   piece(1.0, std::numeric_limits<double>::infinity());
        }
        case CompensatorKind::EdgeLimit: {
            double lo = a;
            double hi = std::min(b, -1.0);
            if (lo >= hi) return 0.0;
            auto anti = [](double x) {
                return -(2.0 / 3.0) * std::sqrt(8.0 * kPi) * std::pow(-x, 1.5);
            };
            return anti(hi) - anti(lo);
        }
        case CompensatorKind::BulkSemicircle:
        case CompensatorKind::EdgeFinite: {
            double total = 0.0;
            double lo = std::max({a, 1.0, support_lower()});
            double hi = std::min(b, support_upper());
            if (lo < hi) total += integrate([this](double t) { return density(t); }, lo, hi, 1e-10).value;
            lo = std::max(a, support_lower());
            hi = std::min({b, -1.0, support_upper()});
            if (lo < hi) total += integrate([this](double t) { return density(t); }, lo, hi, 1e-10).value;
            return total;
        }
    }
    return 0.0;
}

}  // namespace stozeta
