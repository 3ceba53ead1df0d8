#include "stozeta/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <json.hpp>

#include "stozeta/kernels.hpp"
#include "stozeta/linalg.hpp"

namespace stozeta {

namespace {

constexpr double kPi = std::numbers::pi;

// wraps to (-pi, pi]
double wrap_angle(double t) {
    t = std::fmod(t + kPi, 2.0 * kPi);
    if (t <= 0.0) t += 2.0 * kPi;
    return t - kPi;
}

}  // namespace

const char* to_string(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::IidUniform: return "iid-uniform";
        case EnsembleKind::CBetaE: return "cbeta";
        case EnsembleKind::SONTimesU: return "so-n-times-u";
        case EnsembleKind::GBetaE: return "gbeta";
        case EnsembleKind::SineBetaApprox: return "sine-beta-approx";
        case EnsembleKind::SineKernelDPP: return "sine-dpp";
    }
    return "unknown";
}

const char* to_string(ScalingKind kind) {
    switch (kind) {
        case ScalingKind::CircleUnfold: return "circle-unfold";
        case ScalingKind::Bulk: return "bulk";
        case ScalingKind::Edge: return "edge";
    }
    return "unknown";
}

std::optional<EnsembleKind> ensemble_kind_from_string(const std::string& name) {
    if (name == "iid-uniform") return EnsembleKind::IidUniform;
    if (name == "cbeta") return EnsembleKind::CBetaE;
    if (name == "cue") return EnsembleKind::CBetaE;  // alias, beta = 2
    if (name == "so-n-times-u") return EnsembleKind::SONTimesU;
    if (name == "gbeta") return EnsembleKind::GBetaE;
    if (name == "sine-beta-approx") return EnsembleKind::SineBetaApprox;
    if (name == "sine-dpp") return EnsembleKind::SineKernelDPP;
    return std::nullopt;
}

std::optional<ScalingKind> scaling_kind_from_string(const std::string& name) {
    if (name == "circle-unfold") return ScalingKind::CircleUnfold;
    if (name == "bulk") return ScalingKind::Bulk;
    if (name == "edge") return ScalingKind::Edge;
    return std::nullopt;
}

void EnsembleSpec::validate() const {
    require(n >= 1, "config", "ensemble size n must be >= 1");
    switch (kind) {
        case EnsembleKind::SONTimesU:
            require(n >= 2, "config", "SO(n) requires n >= 2");
            require(psi > -kPi && psi <= kPi, "config", "psi must lie in (-pi, pi]");
            break;
        case EnsembleKind::CBetaE:
        case EnsembleKind::SineBetaApprox:
            require(beta > 0.0, "config", "beta must be positive");
            break;
        case EnsembleKind::GBetaE:
            require(beta > 0.0, "config", "beta must be positive");
            break;
        default:
            break;
    }
    if (kind == EnsembleKind::GBetaE) {
        require(scaling.type != ScalingKind::CircleUnfold, "config",
                "GBetaE requires bulk or edge scaling");
        if (scaling.type == ScalingKind::Bulk) {
            require(scaling.E > -2.0 && scaling.E < 2.0, "config", "bulk scaling requires E in (-2, 2)");
        }
    } else {
        require(scaling.type == ScalingKind::CircleUnfold, "config",
                std::string(to_string(kind)) + " supports only circle-unfold scaling");
    }
    if (kind == EnsembleKind::SineBetaApprox || kind == EnsembleKind::SineKernelDPP) {
        require(window_A > 0.0, "config", "window A must be positive");
    }
}

CompensatorMeasure EnsembleSpec::default_compensator() const {
    switch (kind) {
        case EnsembleKind::IidUniform:
        case EnsembleKind::CBetaE:
        case EnsembleKind::SONTimesU:
            return CompensatorMeasure::circular_lebesgue();
        case EnsembleKind::GBetaE:
            if (scaling.type == ScalingKind::Bulk)
                return CompensatorMeasure::bulk_semicircle(static_cast<std::int64_t>(n), scaling.E);
            return CompensatorMeasure::edge_finite(static_cast<std::int64_t>(n));
        case EnsembleKind::SineBetaApprox:
        case EnsembleKind::SineKernelDPP:
            return CompensatorMeasure::bulk_limit();
    }
    return CompensatorMeasure::bulk_limit();
}

std::string EnsembleSpec::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = to_string(kind);
    j["n"] = n;
    j["beta"] = beta;
    j["psi"] = psi;
    j["scaling"] = {{"type", to_string(scaling.type)}, {"E", scaling.E}};
    j["window_A"] = window_A;
    return j.dump();
}

EnsembleSpec EnsembleSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail("config", std::string("invalid ensemble JSON: ") + e.what());
    }
    static const char* known[] = {"kind", "n", "beta", "psi", "scaling", "window_A"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || (it.key() == k);
        require(ok, "config", "unknown ensemble field: " + it.key());
    }
    EnsembleSpec spec;
    require(j.contains("kind") && j["kind"].is_string(), "config", "ensemble kind missing");
    auto kind = ensemble_kind_from_string(j["kind"].get<std::string>());
    require(kind.has_value(), "config", "unknown ensemble kind: " + j["kind"].get<std::string>());
    spec.kind = *kind;
    if (j.contains("n")) spec.n = j["n"].get<std::size_t>();
    if (j.contains("beta")) spec.beta = j["beta"].get<double>();
    if (j.contains("psi")) spec.psi = j["psi"].get<double>();
    if (j.contains("window_A")) spec.window_A = j["window_A"].get<double>();
    if (j.contains("scaling")) {
        const auto& s = j["scaling"];
        for (auto it = s.begin(); it != s.end(); ++it) {
            require(it.key() == "type" || it.key() == "E", "config",
                    "unknown scaling field: " + it.key());
        }
        require(s.contains("type") && s["type"].is_string(), "config", "scaling type missing");
        auto st = scaling_kind_from_string(s["type"].get<std::string>());
        require(st.has_value(), "config", "unknown scaling type: " + s["type"].get<std::string>());
        spec.scaling.type = *st;
        if (s.contains("E")) spec.scaling.E = s["E"].get<double>();
    }
    spec.validate();
    return spec;
}

CircleConfiguration sample_iid_uniform(std::size_t n, SeededRng& rng) {
    require(n >= 1, "argument", "sample_iid_uniform requires n >= 1");
    CircleConfiguration cfg;
    cfg.n = n;
    cfg.angles.reserve(n);
    for (std::size_t i = 0; i < n; ++i) cfg.angles.push_back(rng.uniform_angle());
    std::sort(cfg.angles.begin(), cfg.angles.end());
    return cfg;
}

namespace {

// CMV matrix C = L M from Verblunsky coefficients; eigenangles are CBetaE.
std::vector<std::complex<double>> cmv_matrix(const std::vector<std::complex<double>>& alpha,
                                             std::size_t n) {
    using cd = std::complex<double>;
    auto block = [&](std::size_t k, cd theta[2][2]) {
        // 2x2 factor on coordinates (k, k+1); for k = n-1 the 1x1 factor conj(alpha)
        cd a = alpha[k];
        double rho = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
        theta[0][0] = std::conj(a);
        theta[0][1] = rho;
        theta[1][0] = rho;
        theta[1][1] = -a;
    };
    std::vector<cd> L(n * n, cd(0.0)), M(n * n, cd(0.0));
    auto set = [&](std::vector<cd>& mat, std::size_t i, std::size_t j, cd v) {
        mat[j * n + i] = v;
    };
    auto fill = [&](std::vector<cd>& mat, std::size_t start) {
        std::size_t k = start;
        for (;;) {
            if (k == n - 1) {
                set(mat, k, k, std::conj(alpha[k]));
                break;
            }
            if (k > n - 1) break;
            cd theta[2][2];
            block(k, theta);
            set(mat, k, k, theta[0][0]);
            set(mat, k, k + 1, theta[0][1]);
            set(mat, k + 1, k, theta[1][0]);
            set(mat, k + 1, k + 1, theta[1][1]);
            k += 2;
            if (k >= n) break;
        }
    };
    fill(L, 0);
    set(M, 0, 0, cd(1.0));
    if (n > 1) fill(M, 1);
    // banded product: L and M have bandwidth 1
    std::vector<cd> C(n * n, cd(0.0));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t klo = i == 0 ? 0 : i - 1;
        std::size_t khi = std::min(n - 1, i + 1);
        for (std::size_t k = klo; k <= khi; ++k) {
            cd lv = L[k * n + i];
            if (lv == cd(0.0)) continue;
            std::size_t jlo = k == 0 ? 0 : k - 1;
            std::size_t jhi = std::min(n - 1, k + 1);
            for (std::size_t j = jlo; j <= jhi; ++j) {
                cd mv = M[j * n + k];
                if (mv == cd(0.0)) continue;
                C[j * n + i] += lv * mv;
            }
        }
    }
    return C;
}

}  // namespace

CircleConfiguration sample_cbeta(std::size_t n, double beta, SeededRng& rng) {
    require(n >= 1, "argument", "sample_cbeta requires n >= 1");
    require(beta > 0.0, "argument", "sample_cbeta requires beta > 0");
    using cd = std::complex<double>;
    const int max_retries = 3;
    for (int attempt = 0;; ++attempt) {
        std::vector<cd> alpha(n);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            double r = std::sqrt(rng.beta_one(0.5 * beta * static_cast<double>(n - k - 1)));
            double phi = rng.uniform_angle();
            alpha[k] = std::polar(r, phi);
        }
        alpha[n - 1] = std::polar(1.0, rng.uniform_angle());
        auto C = cmv_matrix(alpha, n);
        try {
            auto w = linalg::complex_eigenvalues(C, static_cast<int>(n));
            CircleConfiguration cfg;
            cfg.n = n;
            cfg.angles.reserve(n);
            for (const auto& z : w) cfg.angles.push_back(wrap_angle(std::arg(z)));
            std::sort(cfg.angles.begin(), cfg.angles.end());
            return cfg;
        } catch (const Error& e) {
            if (attempt >= max_retries) {
                fail("sampler", std::string(e.what()) + " after " + std::to_string(attempt + 1) +
                                    " attempts");
            }
        }
    }
}

CircleConfiguration sample_son_times_u(std::size_t n, double psi, SeededRng& rng) {
    require(n >= 2, "argument", "sample_son_times_u requires n >= 2");
    std::vector<double> g(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) g[j * n + i] = rng.normal();
    auto q = linalg::haar_special_orthogonal(std::move(g), static_cast<int>(n));
    auto w = linalg::real_eigenvalues(q, static_cast<int>(n));
    std::vector<double> angles;
    angles.reserve(n);
    for (const auto& z : w) angles.push_back(wrap_angle(std::arg(z)));
    // drop the deterministic eigenvalue at 1 (n odd) so no point sits at u
    std::sort(angles.begin(), angles.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
    });
    if (n % 2 == 1 && !angles.empty() && std::abs(angles.front()) < 1e-8) {
        angles.erase(angles.begin());
    }
    for (double& t : angles) t = wrap_angle(t + psi);
    std::sort(angles.begin(), angles.end());
    CircleConfiguration cfg;
    cfg.n = n;
    cfg.angles = std::move(angles);
    return cfg;
}

std::vector<double> sample_gbeta(std::size_t n, double beta, SeededRng& rng) {
    require(n >= 1, "argument", "sample_gbeta requires n >= 1");
    require(beta > 0.0, "argument", "sample_gbeta requires beta > 0");
    std::vector<double> diag(n), off(n >= 1 ? n - 1 : 0);
    const double scale = std::sqrt(2.0 / beta);
    for (std::size_t i = 0; i < n; ++i) diag[i] = scale * rng.normal();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        off[i] = rng.chi(beta * static_cast<double>(n - 1 - i)) / std::sqrt(beta);
    }
    return linalg::tridiagonal_eigenvalues(std::move(diag), std::move(off));
}

namespace {

bool has_zero_angle(const CircleConfiguration& cfg) {
    for (double t : cfg.angles)
        if (t == 0.0) return true;
    return false;
}

}  // namespace

PointConfiguration sample_process(const EnsembleSpec& spec, SeededRng& rng) {
    spec.validate();
    const int max_attempts = 8;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        PointConfiguration cfg;
        switch (spec.kind) {
            case EnsembleKind::IidUniform: {
                auto circle = sample_iid_uniform(spec.n, rng);
                if (has_zero_angle(circle)) continue;
                cfg = unfold_circle(circle);
                break;
            }
            case EnsembleKind::CBetaE: {
                auto circle = sample_cbeta(spec.n, spec.beta, rng);
                if (has_zero_angle(circle)) continue;
                cfg = unfold_circle(circle);
                break;
            }
            case EnsembleKind::SONTimesU: {
                auto circle = sample_son_times_u(spec.n, spec.psi, rng);
                if (has_zero_angle(circle)) continue;
                cfg = unfold_circle(circle);
                break;
            }
            case EnsembleKind::GBetaE: {
                auto lambdas = sample_gbeta(spec.n, spec.beta, rng);
                if (spec.scaling.type == ScalingKind::Bulk) {
                    cfg = rescale_bulk(lambdas, spec.n, spec.scaling.E);
                } else {
                    cfg = rescale_edge(lambdas, spec.n);
                }
                break;
            }
            case EnsembleKind::SineBetaApprox: {
                std::size_t n_eff = std::max({spec.n, std::size_t{100},
                                              static_cast<std::size_t>(std::ceil(20.0 * spec.window_A))});
                auto circle = sample_cbeta(n_eff, spec.beta, rng);
                if (has_zero_angle(circle)) continue;
                auto full = unfold_circle(circle);
                auto window = full.in_symmetric_window(spec.window_A);
                cfg = PointConfiguration::from_values({window.begin(), window.end()});
                break;
            }
            case EnsembleKind::SineKernelDPP: {
                std::size_t m = std::max<std::size_t>(
                    64, static_cast<std::size_t>(std::ceil(64.0 * spec.window_A)));
                cfg = sample_sine_dpp(spec.window_A, m, rng);
                break;
            }
        }
        if (cfg.origin_excluded) return cfg;
        // a point landed within 1e-12 of zero: rounding artifact, resample
    }
    fail("sampler", "sample_process: point at zero persisted across resampling attempts");
}

}  // namespace stozeta
