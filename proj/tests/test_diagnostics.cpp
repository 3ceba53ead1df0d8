#include <doctest.h>

#include <cmath>
#include <complex>

#include "stozeta/diagnostics.hpp"
#include "stozeta/parallel.hpp"

using namespace stozeta;
using cd = std::complex<double>;

TEST_CASE("online moments match the two-pass computation") {
    SeededRng rng(149, 0);
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i) xs.push_back(rng.uniform(-3.0, 7.0) * rng.normal());
    OnlineMoments om;
    for (double x : xs) om.add(x);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    CHECK(om.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(om.variance_unbiased() == doctest::Approx(var).epsilon(1e-10));

    // associative merge over disjoint chunks
    OnlineMoments a, b, c;
    for (std::size_t i = 0; i < 300; ++i) a.add(xs[i]);
    for (std::size_t i = 300; i < 650; ++i) b.add(xs[i]);
    for (std::size_t i = 650; i < xs.size(); ++i) c.add(xs[i]);
    a.merge(b);
    a.merge(c);
    CHECK(a.mean == doctest::Approx(om.mean).epsilon(1e-12));
    CHECK(a.variance_unbiased() == doctest::Approx(om.variance_unbiased()).epsilon(1e-10));
}

TEST_CASE("counting stats on iid uniform reproduce the binomial variance") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::IidUniform;
    spec.n = 100;
    std::vector<double> grid = {0.0, 10.0, 25.0};
    const std::int64_t R = 4000;
    auto stats = counting_stats(spec, grid, R, 151, 2);
    CHECK(stats.moments[0].mean == 0.0);
    CHECK(stats.moments[0].variance_unbiased() == 0.0);
    // count in [0, 25] is Binomial(100, 1/4)
    double p = 0.25;
    double var = 100.0 * p * (1.0 - p);
    double mu4 = 100.0 * p * (1.0 - p) * (1.0 + 3.0 * p * (1.0 - p) * 98.0);
    double se_var = std::sqrt((mu4 - var * var * (R - 3.0) / (R - 1.0)) / R);
    CHECK(std::abs(stats.moments[2].variance_unbiased() - var) <= 3.0 * se_var);
    CHECK(std::abs(stats.moments[2].mean - 25.0) <= 3.0 * std::sqrt(var / R));
    CHECK_THROWS_AS(counting_stats(spec, grid, 50, 1, 1), Error);
}

TEST_CASE("counting stats mean tracks x for rotation-invariant ensembles") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::CBetaE;
    spec.n = 80;
    spec.beta = 2.0;
    std::vector<double> grid = {-15.0, -5.0, 5.0, 15.0};
    auto stats = counting_stats(spec, grid, 500, 153, 2);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        CHECK(std::abs(stats.moments[g].mean - grid[g]) < 0.2);
    }
}

TEST_CASE("prop crit fits: CUE has small alpha, iid has alpha near one half") {
    EnsembleSpec cue;
    cue.kind = EnsembleKind::CBetaE;
    cue.n = 200;
    cue.beta = 2.0;
    auto comp = cue.default_compensator();
    std::vector<double> grid;
    for (int i = -12; i <= 12; ++i) grid.push_back(50.0 * i / 12.0);
    auto stats = counting_stats(cue, grid, 500, 157, 2, &comp);
    auto report = fit_prop_crit(stats, comp);
    CHECK(report.pass);
    CHECK(report.alpha_hat < 0.2);
    CHECK(report.nu_hat < 0.05);
    CHECK(report.alpha_hat + report.nu_hat < 1.0);

    EnsembleSpec iid;
    iid.kind = EnsembleKind::IidUniform;
    iid.n = 200;
    auto icomp = iid.default_compensator();
    auto istats = counting_stats(iid, grid, 1500, 163, 2, &icomp);
    auto ireport = fit_prop_crit(istats, icomp);
    CHECK(ireport.variance_fit.exponent_hat == doctest::Approx(1.0).epsilon(0.2));  // 2 alpha
    CHECK(ireport.pass);
}

TEST_CASE("degenerate zero-deviation input passes with exponent zero") {
    CountingStats stats;
    auto comp = CompensatorMeasure::circular_lebesgue();
    for (double x : {-20.0, -10.0, -3.0, 3.0, 10.0, 20.0}) {
        stats.grid.push_back(x);
        OnlineMoments om;
        // every replica reproduces the compensator cumulative exactly
        om.add(comp.cumulative(x));
        om.add(comp.cumulative(x));
        stats.moments.push_back(om);
    }
    stats.replicas = 2;
    auto report = fit_prop_crit(stats, comp);
    CHECK(report.mean_fit.pass);
    CHECK(report.mean_fit.exponent_hat == 0.0);
    CHECK(report.variance_fit.exponent_hat == 0.0);
}

TEST_CASE("two-sample KS basics") {
    std::vector<double> a, b;
    SeededRng rng(167, 0);
    for (int i = 0; i < 2000; ++i) {
        a.push_back(rng.normal());
        b.push_back(rng.normal() + 1.0);
    }
    double shifted = two_sample_ks(a, b);
    CHECK(shifted > 0.3);
    std::vector<double> c = a;
    CHECK(two_sample_ks(a, c) == 0.0);
    CHECK(ks_critical_value(100, 100, 0.05) == doctest::Approx(1.358 * std::sqrt(0.02)));
}

TEST_CASE("KS self-test: identical laws stay below the 5% critical value") {
    // test of the test: >= 93 of 100 repetitions below the critical value
    int below = 0;
    const std::size_t m = 400;
    for (int rep = 0; rep < 100; ++rep) {
        SeededRng rng(173, rep);
        std::vector<double> a(m), b(m);
        for (std::size_t i = 0; i < m; ++i) a[i] = rng.normal();
        for (std::size_t i = 0; i < m; ++i) b[i] = rng.normal();
        if (two_sample_ks(a, b) < ks_critical_value(m, m, 0.05)) ++below;
    }
    CHECK(below >= 93);
}

TEST_CASE("marginal convergence: identical-law split via seed blocks") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::IidUniform;
    spec.n = 64;
    const std::int64_t R = 600;
    std::vector<double> mod_a(R), mod_b(R);
    parallel_for(static_cast<std::size_t>(R), 2, [&](std::size_t r) {
        SeededRng ra(181, r), rb(181, 100000 + r);
        auto ca = sample_process(spec, ra);
        auto cb = sample_process(spec, rb);
        mod_a[r] = static_cast<double>(counting(ca, 10.0).value);
        mod_b[r] = static_cast<double>(counting(cb, 10.0).value);
    });
    CHECK(two_sample_ks(mod_a, mod_b) < ks_critical_value(R, R, 0.01));
}

TEST_CASE("marginal convergence runs on CUE and reports pairs") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::CBetaE;
    spec.n = 32;
    spec.beta = 2.0;
    auto report = marginal_convergence(spec, {32, 64}, {cd(0.0, 1.0), cd(1.0, 1.0)}, 300, 191, 2);
    REQUIRE(report.pairs.size() == 1);
    CHECK(report.pairs[0].ks_modulus.size() == 2);
    CHECK(report.final_max_ks >= 0.0);
    CHECK(report.final_max_ks <= 1.0);
    auto text = report.to_json();
    CHECK(text.find("\"schema_version\"") != std::string::npos);
    CHECK(text.find("\"seed\"") != std::string::npos);
    CHECK_THROWS_AS(marginal_convergence(spec, {64}, {cd(0.0, 1.0)}, 100, 1, 1), Error);
    CHECK_THROWS_AS(marginal_convergence(spec, {32, 64}, {cd(1.0, 0.0)}, 100, 1, 1), Error);
}

TEST_CASE("tightness probe quantiles") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::CBetaE;
    spec.n = 32;
    spec.beta = 2.0;
    // r -> 0: the functional approaches f(0) = 1
    auto small = tightness_probe(spec, {32}, 1e-4, 100, 193, 2);
    CHECK(small.q50.front() == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(small.q99.front() == doctest::Approx(1.0).epsilon(1e-2));

    auto report = tightness_probe(spec, {32, 64, 128}, 1.0, 200, 197, 2);
    CHECK(report.ratio_q99 < 2.0);
    CHECK(report.bounded);
}

TEST_CASE("spacing histogram: exponential gaps for iid, repulsion for CUE") {
    EnsembleSpec iid;
    iid.kind = EnsembleKind::IidUniform;
    iid.n = 400;
    std::vector<PointConfiguration> samples(300);
    parallel_for(samples.size(), 2, [&](std::size_t r) {
        SeededRng rng(199, r);
        samples[r] = sample_process(iid, rng);
    });
    auto hist = spacing_histogram(samples, 100.0);
    CHECK(hist.total_gaps > 50000);
    CHECK(histogram_l1_vs_exponential(hist) < 0.05);

    EnsembleSpec cue;
    cue.kind = EnsembleKind::CBetaE;
    cue.n = 64;
    cue.beta = 2.0;
    std::vector<PointConfiguration> cs(300);
    parallel_for(cs.size(), 2, [&](std::size_t r) {
        SeededRng rng(211, r);
        cs[r] = sample_process(cue, rng);
    });
    auto cue_hist = spacing_histogram(cs, 16.0);
    CHECK(cue_hist.masses[0] < hist.masses[0]);

    auto single = PointConfiguration::from_values({1.0, 2.0});
    CHECK_THROWS_AS(spacing_histogram({single}, 5.0), Error);
}
