#include "stozeta/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "stozeta/holo.hpp"
#include "stozeta/parallel.hpp"

namespace stozeta {

namespace {

using cd = std::complex<double>;

struct EvalMatrix {
    // replicas x s_points, stored row-major
    std::vector<cd> values;
    std::size_t cols = 0;
};

EvalMatrix sample_functional(const EnsembleSpec& spec, const std::vector<cd>& s_points,
                             std::int64_t replicas, std::uint64_t seed, std::uint64_t stream_base,
                             int threads) {
    EvalMatrix out;
    out.cols = s_points.size();
    out.values.assign(static_cast<std::size_t>(replicas) * s_points.size(), cd(0.0));
    parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
        SeededRng rng(seed, stream_base + r);
        // one sampled configuration shared across the s points of this replica
        switch (spec.kind) {
            case EnsembleKind::IidUniform:
            case EnsembleKind::CBetaE:
            case EnsembleKind::SONTimesU: {
                for (;;) {
                    CircleConfiguration circle;
                    if (spec.kind == EnsembleKind::IidUniform) {
                        circle = sample_iid_uniform(spec.n, rng);
                    } else if (spec.kind == EnsembleKind::CBetaE) {
                        circle = sample_cbeta(spec.n, spec.beta, rng);
                    } else {
                        circle = sample_son_times_u(spec.n, spec.psi, rng);
                    }
                    bool zero = false;
                    for (double t : circle.angles) zero = zero || t == 0.0;
                    if (zero) continue;
                    for (std::size_t j = 0; j < s_points.size(); ++j)
                        out.values[r * out.cols + j] = xi_circular(circle, s_points[j]);
                    break;
                }
                break;
            }
            default: {
                auto cfg = sample_process(spec, rng);
                std::optional<CompensatorMeasure> comp;
                Prefactor pre = Prefactor::ExpIPiS;
                double A_full = spec.window_A;
                if (spec.kind == EnsembleKind::GBetaE) {
                    comp = spec.default_compensator();
                    pre = Prefactor::None;
                    A_full = cfg.empty() ? 2.0
                                         : std::max({2.0, std::abs(cfg.points.front()),
                                                     std::abs(cfg.points.back())}) + 1.0;
                }
                auto ev = ProductEvaluator::make(std::move(cfg), comp, pre,
                                                 {A_full, A_full + 1.0, A_full + 2.0});
                for (std::size_t j = 0; j < s_points.size(); ++j)
                    out.values[r * out.cols + j] = eval_truncated(ev, s_points[j], ev.schedule.back());
                break;
            }
        }
    });
    return out;
}

double fit_exponent_loglog(const std::vector<double>& xs, const std::vector<double>& deviations,
                           bool* degenerate) {
    // least squares of log|dev| against log(1 + |x|), over |x| >= 2 only
    std::vector<double> lx, ly;
    bool any_positive = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(xs[i]) < 2.0) continue;
        if (deviations[i] > 1e-12) any_positive = true;
    }
    if (degenerate) *degenerate = !any_positive;
    if (!any_positive) return 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(xs[i]) < 2.0) continue;
        double d = std::max(deviations[i], 1e-12);
        lx.push_back(std::log(1.0 + std::abs(xs[i])));
        ly.push_back(std::log(d));
    }
    if (lx.size() < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

BoundFit make_bound_fit(const std::vector<double>& xs, const std::vector<double>& deviations) {
    BoundFit fit;
    bool degenerate = false;
    double slope = fit_exponent_loglog(xs, deviations, &degenerate);
    fit.exponent_hat = std::max(0.0, slope);
    if (degenerate) {
        fit.exponent_hat = 0.0;
        fit.C_hat = 0.0;
        fit.max_violation_ratio = 0.0;
        fit.pass = true;
        return fit;
    }
    double cmax = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double bound = std::pow(1.0 + std::abs(xs[i]), fit.exponent_hat);
        cmax = std::max(cmax, deviations[i] / bound);
    }
    fit.C_hat = cmax;
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double bound = fit.C_hat * std::pow(1.0 + std::abs(xs[i]), fit.exponent_hat);
        if (bound > 0.0) worst = std::max(worst, deviations[i] / bound);
    }
    fit.max_violation_ratio = worst;
    fit.pass = worst <= 1.0 + 1e-9;
    return fit;
}

}  // namespace

void OnlineMoments::add(double x) {
    ++count;
    double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
}

void OnlineMoments::merge(const OnlineMoments& other) {
    if (other.count == 0) return;
    if (count == 0) {
        *this = other;
        return;
    }
    double delta = other.mean - mean;
    std::int64_t total = count + other.count;
    double nf = static_cast<double>(count), mf = static_cast<double>(other.count);
    mean += delta * mf / static_cast<double>(total);
    m2 += other.m2 + delta * delta * nf * mf / static_cast<double>(total);
    count = total;
}

double OnlineMoments::variance_unbiased() const {
    if (count < 2) return 0.0;
    return m2 / static_cast<double>(count - 1);
}

CountingStats counting_stats(const EnsembleSpec& spec, const std::vector<double>& grid,
                             std::int64_t replicas, std::uint64_t seed, int threads,
                             const CompensatorMeasure* compensator) {
    require(replicas >= 100, "argument", "counting_stats needs >= 100 replicas");
    require(!grid.empty(), "argument", "counting_stats needs a non-empty grid");
    spec.validate();
    // per-replica counting values, merged in index order afterwards
    std::vector<std::vector<double>> counts(static_cast<std::size_t>(replicas));
    parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
        SeededRng rng(seed, r);
        auto cfg = sample_process(spec, rng);
        auto& row = counts[r];
        row.resize(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g)
            row[g] = static_cast<double>(counting(cfg, grid[g]).value);
    });
    CountingStats stats;
    stats.grid = grid;
    stats.moments.assign(grid.size(), OnlineMoments{});
    stats.replicas = replicas;
    stats.seed = seed;
    for (std::int64_t r = 0; r < replicas; ++r) {
        for (std::size_t g = 0; g < grid.size(); ++g) stats.moments[g].add(counts[static_cast<std::size_t>(r)][g]);
    }
    if (compensator) {
        stats.compensator_cumulative.reserve(grid.size());
        for (double x : grid) stats.compensator_cumulative.push_back(compensator->cumulative(x));
    }
    return stats;
}

PropCritReport fit_prop_crit(const CountingStats& stats, const CompensatorMeasure& M0) {
    require(!stats.grid.empty(), "argument", "fit_prop_crit needs counting statistics");
    PropCritReport report;
    std::vector<double> mean_dev, var_dev, interval_dev;
    mean_dev.reserve(stats.grid.size());
    var_dev.reserve(stats.grid.size());
    interval_dev.reserve(stats.grid.size());
    for (std::size_t g = 0; g < stats.grid.size(); ++g) {
        double m0x = M0.cumulative(stats.grid[g]);
        mean_dev.push_back(std::abs(stats.moments[g].mean - m0x));
        var_dev.push_back(stats.moments[g].variance_unbiased());
        // unit-length intervals [x, x+1]: the (1 + |y-x|) factor is constant 2
        interval_dev.push_back(M0.interval_measure(stats.grid[g], stats.grid[g] + 1.0) / 2.0);
    }
    report.mean_fit = make_bound_fit(stats.grid, mean_dev);
    report.variance_fit = make_bound_fit(stats.grid, var_dev);
    report.interval_fit = make_bound_fit(stats.grid, interval_dev);
    double alpha_from_mean = report.mean_fit.exponent_hat;
    double alpha_from_var = report.variance_fit.exponent_hat / 2.0;
    report.alpha_hat = std::max(alpha_from_mean, alpha_from_var);
    report.nu_hat = report.interval_fit.exponent_hat;
    report.pass = report.mean_fit.pass && report.variance_fit.pass && report.interval_fit.pass &&
                  (report.alpha_hat + report.nu_hat < 1.0);
    return report;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    require(!a.empty() && !b.empty(), "argument", "two_sample_ks needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical_value(std::size_t m, std::size_t n, double alpha) {
    double c = alpha <= 0.01 ? 1.628 : 1.358;  // 1% / 5% two-sample coefficients
    double mm = static_cast<double>(m), nn = static_cast<double>(n);
    return c * std::sqrt((mm + nn) / (mm * nn));
}

std::string ConvergenceReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["seed"] = seed;
    j["replicas"] = replicas;
    auto& sp = j["s_points"] = nlohmann::ordered_json::array();
    for (const auto& s : s_points) sp.push_back({{"re", s.real()}, {"im", s.imag()}});
    auto& pj = j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& p : pairs) {
        pj.push_back({{"n_low", p.n_low},
                      {"n_high", p.n_high},
                      {"ks_modulus", p.ks_modulus},
                      {"ks_argument", p.ks_argument}});
    }
    j["distances_decreasing"] = distances_decreasing;
    j["final_max_ks"] = final_max_ks;
    return j.dump(2);
}

ConvergenceReport marginal_convergence(const EnsembleSpec& base, const std::vector<std::size_t>& n_list,
                                       const std::vector<std::complex<double>>& s_points,
                                       std::int64_t replicas, std::uint64_t seed, int threads) {
    require(n_list.size() >= 2, "argument", "marginal_convergence needs >= 2 ensemble sizes");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        require(n_list[i] > n_list[i - 1], "argument", "n_list must be increasing");
    for (const auto& s : s_points) {
        require(s.imag() != 0.0, "argument", "s points must lie off the real axis");
    }
    require(replicas >= 2, "argument", "marginal_convergence needs replicas");

    ConvergenceReport report;
    report.s_points = s_points;
    report.replicas = replicas;
    report.seed = seed;

    std::vector<EvalMatrix> per_n;
    per_n.reserve(n_list.size());
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        EnsembleSpec spec = base;
        spec.n = n_list[k];
        // disjoint stream blocks per ensemble size
        per_n.push_back(sample_functional(spec, s_points, replicas, seed,
                                          k * static_cast<std::uint64_t>(replicas), threads));
    }
    double prev_max = 0.0;
    bool decreasing = true;
    for (std::size_t k = 0; k + 1 < n_list.size(); ++k) {
        ConvergencePair pair;
        pair.n_low = n_list[k];
        pair.n_high = n_list[k + 1];
        double pair_max = 0.0;
        for (std::size_t j = 0; j < s_points.size(); ++j) {
            std::vector<double> mod_a, mod_b, arg_a, arg_b;
            mod_a.reserve(static_cast<std::size_t>(replicas));
            for (std::int64_t r = 0; r < replicas; ++r) {
                cd va = per_n[k].values[static_cast<std::size_t>(r) * s_points.size() + j];
                cd vb = per_n[k + 1].values[static_cast<std::size_t>(r) * s_points.size() + j];
                mod_a.push_back(std::abs(va));
                mod_b.push_back(std::abs(vb));
                arg_a.push_back(std::arg(va));
                arg_b.push_back(std::arg(vb));
            }
            double km = two_sample_ks(mod_a, mod_b);
            double ka = two_sample_ks(arg_a, arg_b);
            pair.ks_modulus.push_back(km);
            pair.ks_argument.push_back(ka);
            pair_max = std::max({pair_max, km, ka});
        }
        if (k > 0 && pair_max > prev_max) decreasing = false;
        prev_max = pair_max;
        report.pairs.push_back(std::move(pair));
    }
    report.distances_decreasing = decreasing;
    report.final_max_ks = prev_max;
    return report;
}

TightnessReport tightness_probe(const EnsembleSpec& base, const std::vector<std::size_t>& n_list,
                                double compact_radius, std::int64_t replicas, std::uint64_t seed,
                                int threads) {
    require(compact_radius > 0.0, "argument", "tightness radius must be positive");
    require(!n_list.empty() && replicas >= 2, "argument", "tightness_probe needs sizes and replicas");
    // 32 x 32 grid over the disc |s| <= r
    std::vector<cd> grid;
    for (int a = 0; a < 32; ++a) {
        for (int b = 0; b < 32; ++b) {
            double x = -compact_radius + (2.0 * compact_radius) * (a + 0.5) / 32.0;
            double y = -compact_radius + (2.0 * compact_radius) * (b + 0.5) / 32.0;
            if (x * x + y * y <= compact_radius * compact_radius) grid.emplace_back(x, y);
        }
    }
    TightnessReport report;
    report.n_list = n_list;
    report.replicas = replicas;
    report.seed = seed;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        EnsembleSpec spec = base;
        spec.n = n_list[k];
        auto values = sample_functional(spec, grid, replicas, seed,
                                        k * static_cast<std::uint64_t>(replicas), threads);
        std::vector<double> sups(static_cast<std::size_t>(replicas), 0.0);
        for (std::int64_t r = 0; r < replicas; ++r) {
            double s = 0.0;
            for (std::size_t j = 0; j < grid.size(); ++j)
                s = std::max(s, std::abs(values.values[static_cast<std::size_t>(r) * grid.size() + j]));
            sups[static_cast<std::size_t>(r)] = s;
        }
        std::sort(sups.begin(), sups.end());
        auto quantile = [&](double q) {
            double idx = q * (static_cast<double>(sups.size()) - 1.0);
            std::size_t lo = static_cast<std::size_t>(idx);
            std::size_t hi = std::min(lo + 1, sups.size() - 1);
            double frac = idx - static_cast<double>(lo);
            return sups[lo] * (1.0 - frac) + sups[hi] * frac;
        };
        report.q50.push_back(quantile(0.50));
        report.q90.push_back(quantile(0.90));
        report.q99.push_back(quantile(0.99));
    }
    report.ratio_q99 = report.q99.front() > 0.0 ? report.q99.back() / report.q99.front() : 0.0;
    report.bounded = report.ratio_q99 < 2.0;
    return report;
}

Histogram spacing_histogram(const std::vector<PointConfiguration>& samples, double window,
                            std::size_t bins, double range_max) {
    require(samples.size() >= 1, "argument", "spacing_histogram needs samples");
    std::vector<double> gaps;
    for (const auto& cfg : samples) {
        auto win = cfg.in_symmetric_window(window);
        for (std::size_t i = 1; i < win.size(); ++i) gaps.push_back(win[i] - win[i - 1]);
    }
    require(gaps.size() >= 2, "estimation",
            "spacing_histogram needs at least two gaps (" + std::to_string(gaps.size()) + " found)");
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    require(mean > 0.0, "estimation", "degenerate gaps");
    Histogram hist;
    hist.total_gaps = static_cast<std::int64_t>(gaps.size());
    hist.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        hist.edges[b] = range_max * static_cast<double>(b) / static_cast<double>(bins);
    hist.masses.assign(bins, 0.0);
    const double width = range_max / static_cast<double>(bins);
    for (double g : gaps) {
        double u = g / mean;
        if (u >= range_max) continue;
        auto b = static_cast<std::size_t>(u / width);
        if (b < bins) hist.masses[b] += 1.0;
    }
    for (double& mass : hist.masses) mass /= static_cast<double>(gaps.size());
    return hist;
}

double histogram_l1_vs_exponential(const Histogram& hist) {
    double l1 = 0.0;
    for (std::size_t b = 0; b + 1 < hist.edges.size(); ++b) {
        double expected = std::exp(-hist.edges[b]) - std::exp(-hist.edges[b + 1]);
        l1 += std::abs(hist.masses[b] - expected);
    }
    return l1;
}

}  // namespace stozeta
