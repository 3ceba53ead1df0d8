#pragma once

#include <cstdint>
#include <limits>

#include "stozeta/common.hpp"

namespace stozeta {

enum class CompensatorKind {
    CircularLebesgue,  // density 1 off [-1,1], optional support cap
    BulkSemicircle,    // finite-n rescaled semicircle off [-1,1]
    BulkLimit,         // Lebesgue off [-1,1]
    EdgeFinite,        // finite-n edge profile, supported on x <= -1
    EdgeLimit,         // sqrt(-8 pi x) on x <= -1
};

// Deterministic compensator measure M0 / M0n: density, signed cumulative
// M(x) = M([0,x]) for x >= 0 and -M((x,0)) for x < 0, interval measure, and
// the truncated integral of density(rho)/rho over [-A, A].  Every kind has
// density 0 on [-1, 1], so no principal-value handling is needed there.
class CompensatorMeasure {
public:
    static CompensatorMeasure circular_lebesgue(
        double support_cap = std::numeric_limits<double>::infinity());
    static CompensatorMeasure bulk_semicircle(std::int64_t n, double E);
    static CompensatorMeasure bulk_limit();
    static CompensatorMeasure edge_finite(std::int64_t n);
    static CompensatorMeasure edge_limit();

    CompensatorKind kind() const noexcept { return kind_; }
    std::int64_t n() const noexcept { return n_; }
    double energy() const noexcept { return energy_; }
    double support_cap() const noexcept { return support_cap_; }

    double density(double x) const;

    // Closed-form antiderivative for CircularLebesgue/BulkLimit/EdgeLimit;
    // adaptive quadrature (rel tol 1e-10) for the finite-n kinds.
    double cumulative(double x) const;

    // integral of density(rho)/rho over [-A, A]; 0 for A <= 1
    double pv_integral(double A) const;

    double interval_measure(double a, double b) const;

    // smallest [lo, hi] containing the support (for quadrature clipping)
    double support_lower() const;
    double support_upper() const;

private:
    CompensatorMeasure(CompensatorKind kind, std::int64_t n, double energy, double cap)
        : kind_(kind), n_(n), energy_(energy), support_cap_(cap) {}

    CompensatorKind kind_;
    std::int64_t n_ = 0;
    double energy_ = 0.0;
    double support_cap_ = std::numeric_limits<double>::infinity();
};

const char* to_string(CompensatorKind kind);

}  // namespace stozeta
