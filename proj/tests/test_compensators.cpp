#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stozeta/compensators.hpp"
#include "stozeta/quadrature.hpp"
#include "stozeta/rng.hpp"

using namespace stozeta;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("cumulative closed forms") {
    auto circ = CompensatorMeasure::circular_lebesgue();
    CHECK(circ.cumulative(3.0) == doctest::Approx(2.0));
    CHECK(circ.cumulative(-3.0) == doctest::Approx(-2.0));
    CHECK(circ.cumulative(0.7) == 0.0);
    CHECK(circ.cumulative(-1.0) == 0.0);

    auto edge = CompensatorMeasure::edge_limit();
    CHECK(edge.cumulative(0.5) == 0.0);
    CHECK(edge.cumulative(-0.5) == 0.0);
    // antiderivative (2/3) sqrt(8 pi) t^{3/2} gives -(2/3) sqrt(8 pi) (8 - 1)
    double expected = -(2.0 / 3.0) * std::sqrt(8.0 * kPi) * 7.0;
    CHECK(edge.cumulative(-4.0) == doctest::Approx(expected).epsilon(1e-12));
    // quadrature cross-check of the same value
    double quad = -integrate([&](double x) { return edge.density(x); }, -4.0, -1.0, 1e-12).value;
    CHECK(edge.cumulative(-4.0) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("pv integrals: closed forms and the paper constants") {
    CHECK(CompensatorMeasure::circular_lebesgue().pv_integral(25.0) == 0.0);
    CHECK(CompensatorMeasure::bulk_limit().pv_integral(1000.0) == 0.0);
    CHECK(CompensatorMeasure::bulk_limit().pv_integral(0.5) == 0.0);

    auto edge = CompensatorMeasure::edge_limit();
    for (double A : {2.0, 4.0, 16.0}) {
        double closed = 4.0 * std::sqrt(2.0 * kPi) * (1.0 - std::sqrt(A));
        double quad = integrate([&](double x) { return edge.density(x) / x; }, -A, -1.0, 1e-12).value;
        CHECK(edge.pv_integral(A) == doctest::Approx(closed).epsilon(1e-14));
        CHECK(edge.pv_integral(A) == doctest::Approx(quad).epsilon(1e-10));
    }
    CHECK(edge.pv_integral(4.0) == doctest::Approx(-4.0 * std::sqrt(2.0 * kPi)));

    // bulk constant -pi E / sqrt(4 - E^2) at the full-support truncation
    auto bulk = CompensatorMeasure::bulk_semicircle(100000, 1.0);
    double full = bulk.pv_integral(1.0e5);
    CHECK(full == doctest::Approx(-kPi / std::sqrt(3.0)).epsilon(1e-4));
    CHECK(CompensatorMeasure::bulk_semicircle(100000, 0.0).pv_integral(1.0e5) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("bulk pv converges to the closed form as n grows") {
    double target = -kPi * 0.8 / std::sqrt(4.0 - 0.64);
    double prev_err = 1e100;
    for (std::int64_t n : {1000, 10000, 100000}) {
        auto bulk = CompensatorMeasure::bulk_semicircle(n, 0.8);
        double err = std::abs(bulk.pv_integral(static_cast<double>(n)) - target);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-3);
}

TEST_CASE("interval measures") {
    auto circ = CompensatorMeasure::circular_lebesgue();
    CHECK(circ.interval_measure(2.0, 5.0) == doctest::Approx(3.0));
    CHECK(circ.interval_measure(-1.0, 1.0) == 0.0);
    CHECK(circ.interval_measure(0.5, 2.0) == doctest::Approx(1.0));
    CHECK(CompensatorMeasure::edge_limit().interval_measure(-1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(circ.interval_measure(2.0, 1.0), Error);

    // frozen from the antiderivative, cross-checked by quadrature below
    auto edge = CompensatorMeasure::edge_limit();
    double frozen = 6.1109162;
    CHECK(edge.interval_measure(-2.0, -1.0) == doctest::Approx(frozen).epsilon(1e-7));
    double quad = integrate([&](double x) { return edge.density(x); }, -2.0, -1.0, 1e-12).value;
    CHECK(edge.interval_measure(-2.0, -1.0) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("support cap restricts the circular measure") {
    auto capped = CompensatorMeasure::circular_lebesgue(10.0);
    CHECK(capped.cumulative(50.0) == doctest::Approx(9.0));
    CHECK(capped.interval_measure(5.0, 20.0) == doctest::Approx(5.0));
    CHECK(capped.density(11.0) == 0.0);
    CHECK(capped.density(9.0) == 1.0);
}

TEST_CASE("density bounds from the examples section") {
    for (double E : {0.0, 0.5, 1.0, -1.3}) {
        auto bulk = CompensatorMeasure::bulk_semicircle(500, E);
        double bound = 2.0 / std::sqrt(4.0 - E * E);
        for (double x = -300.0; x <= 300.0; x += 1.7) {
            CHECK(bulk.density(x) <= bound + 1e-12);
        }
    }
    auto edge_f = CompensatorMeasure::edge_finite(2000);
    auto edge_l = CompensatorMeasure::edge_limit();
    for (double x = -80.0; x <= 2.0; x += 0.13) {
        CHECK(edge_f.density(x) <= edge_l.density(x) + 1e-12);
    }
}

TEST_CASE("vague convergence of the finite-n measures") {
    // test function g(x) = max(0, 1 - |x - 3| / 2), supported on [1, 5]
    auto g = [](double x) { return std::max(0.0, 1.0 - std::abs(x - 3.0) / 2.0); };
    auto integral_against = [&](const CompensatorMeasure& M) {
        return integrate([&](double x) { return g(x) * M.density(x); }, 1.0, 5.0, 1e-10).value;
    };
    double limit_bulk = integral_against(CompensatorMeasure::bulk_limit());
    double prev = 1e100;
    for (std::int64_t n : {100, 1000, 10000}) {
        double diff = std::abs(integral_against(CompensatorMeasure::bulk_semicircle(n, 0.3)) - limit_bulk);
        CHECK(diff < prev);
        prev = diff;
    }
    auto g_neg = [](double x) { return std::max(0.0, 1.0 - std::abs(x + 3.0) / 2.0); };
    auto integral_neg = [&](const CompensatorMeasure& M) {
        return integrate([&](double x) { return g_neg(x) * M.density(x); }, -5.0, -1.0, 1e-10).value;
    };
    double limit_edge = integral_neg(CompensatorMeasure::edge_limit());
    prev = 1e100;
    for (std::int64_t n : {100, 1000, 10000}) {
        double diff = std::abs(integral_neg(CompensatorMeasure::edge_finite(n)) - limit_edge);
        CHECK(diff < prev);
        prev = diff;
    }
}

TEST_CASE("closed-form cumulative agrees with quadrature on random points") {
    SeededRng rng(77, 0);
    auto circ = CompensatorMeasure::circular_lebesgue();
    auto edge = CompensatorMeasure::edge_limit();
    for (int i = 0; i < 100; ++i) {
        double x = rng.uniform(1.0, 40.0);
        double q = integrate([&](double t) { return circ.density(t); }, 1.0, x, 1e-12).value;
        CHECK(std::abs(circ.cumulative(x) - q) < 1e-8);
        double xn = -rng.uniform(1.0, 40.0);
        double qe = -integrate([&](double t) { return edge.density(t); }, xn, -1.0, 1e-12).value;
        CHECK(std::abs(edge.cumulative(xn) - qe) < 1e-8);
    }
}

TEST_CASE("finite-n cumulative matches direct quadrature") {
    auto bulk = CompensatorMeasure::bulk_semicircle(400, 1.1);
    SeededRng rng(78, 0);
    for (int i = 0; i < 20; ++i) {
        double x = rng.uniform(-80.0, 80.0);
        double expected;
        if (std::abs(x) <= 1.0) {
            expected = 0.0;
        } else if (x > 0.0) {
            expected = integrate([&](double t) { return bulk.density(t); }, 1.0, x, 1e-12).value;
        } else {
            expected = -integrate([&](double t) { return bulk.density(t); }, x, -1.0, 1e-12).value;
        }
        CHECK(bulk.cumulative(x) == doctest::Approx(expected).epsilon(1e-8));
    }
}
