#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stozeta/compensators.hpp"
#include "stozeta/point_process.hpp"
#include "stozeta/rng.hpp"

namespace stozeta {

enum class EnsembleKind {
    IidUniform,
    CBetaE,
    SONTimesU,
    GBetaE,
    SineBetaApprox,
    SineKernelDPP,
};

enum class ScalingKind { CircleUnfold, Bulk, Edge };

struct Scaling {
    ScalingKind type = ScalingKind::CircleUnfold;
    double E = 0.0;  // Bulk only
};

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::CBetaE;
    std::size_t n = 100;
    double beta = 2.0;       // CBetaE / GBetaE / SineBetaApprox
    double psi = 0.0;        // SONTimesU rotation, in (-pi, pi]
    Scaling scaling;
    double window_A = 4.0;   // SineBetaApprox / SineKernelDPP

    void validate() const;

    // compensator paired with this ensemble/scaling in the examples section
    CompensatorMeasure default_compensator() const;

    std::string to_json() const;
    static EnsembleSpec from_json(const std::string& text);
};

const char* to_string(EnsembleKind kind);
const char* to_string(ScalingKind kind);
std::optional<EnsembleKind> ensemble_kind_from_string(const std::string& name);
std::optional<ScalingKind> scaling_kind_from_string(const std::string& name);

// n i.i.d. angles uniform on (-pi, pi]
CircleConfiguration sample_iid_uniform(std::size_t n, SeededRng& rng);

// CBetaE(n, beta) eigenangles via the CMV matrix built from Verblunsky
// coefficients: |alpha_k|^2 ~ Beta(1, beta(n-k-1)/2) with uniform rotation,
// alpha_{n-1} uniform on the unit circle.
CircleConfiguration sample_cbeta(std::size_t n, double beta, SeededRng& rng);

// Haar SO(n) eigenangles rotated by psi.  The deterministic eigenvalue at 1
// (present for n odd) is removed before the rotation, so the configuration
// has no atom at u; the returned n stays the matrix dimension.
CircleConfiguration sample_son_times_u(std::size_t n, double psi, SeededRng& rng);

// GBetaE eigenvalues (ascending) from the tridiagonal model, scaled so
// lambda/sqrt(n) follows the semicircle law on [-2,2].
std::vector<double> sample_gbeta(std::size_t n, double beta, SeededRng& rng);

// Samples the ensemble and applies the declared scaling.  Configurations with
// a point within 1e-12 of 0 are resampled.
PointConfiguration sample_process(const EnsembleSpec& spec, SeededRng& rng);

}  // namespace stozeta
