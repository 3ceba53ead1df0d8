#include "stozeta/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace stozeta {

PointConfiguration PointConfiguration::from_values(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] - values[i - 1] < kDuplicateTol) {
            fail("argument", "duplicate points at " + std::to_string(values[i]) +
                                 " (separation below 1e-12; process must be simple)");
        }
    }
    PointConfiguration cfg;
    cfg.points = std::move(values);
    cfg.origin_excluded = true;
    for (double p : cfg.points) {
        if (std::abs(p) < kDuplicateTol) cfg.origin_excluded = false;
    }
    return cfg;
}

std::span<const double> PointConfiguration::in_symmetric_window(double A) const {
    auto lo = std::lower_bound(points.begin(), points.end(), -A);
    auto hi = std::upper_bound(points.begin(), points.end(), A);
    return {points.data() + (lo - points.begin()), static_cast<std::size_t>(hi - lo)};
}

SignedCount counting(const PointConfiguration& cfg, double x) {
    const auto& p = cfg.points;
    if (x >= 0.0) {
        // points in [0, x]
        auto lo = std::lower_bound(p.begin(), p.end(), 0.0);
        auto hi = std::upper_bound(p.begin(), p.end(), x);
        return {static_cast<std::int64_t>(hi - lo)};
    }
    // minus the points in the open interval (x, 0)
    auto lo = std::upper_bound(p.begin(), p.end(), x);
    auto hi = std::lower_bound(p.begin(), p.end(), 0.0);
    return {-static_cast<std::int64_t>(hi - lo)};
}

std::size_t interval_count(const PointConfiguration& cfg, double a, double b,
                           bool closed_left, bool closed_right) {
    require(a <= b, "argument", "interval_count requires a <= b");
    const auto& p = cfg.points;
    auto lo = closed_left ? std::lower_bound(p.begin(), p.end(), a)
                          : std::upper_bound(p.begin(), p.end(), a);
    auto hi = closed_right ? std::upper_bound(p.begin(), p.end(), b)
                           : std::lower_bound(p.begin(), p.end(), b);
    return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

PointConfiguration unfold_circle(const CircleConfiguration& circle) {
    std::vector<double> pts;
    pts.reserve(circle.angles.size());
    const double scale = static_cast<double>(circle.n) / (2.0 * std::numbers::pi);
    for (double theta : circle.angles) {
        if (theta == 0.0) {
            fail("argument",
                 "unfold_circle: angle exactly 0 (remove the point at 1 before unfolding)");
        }
        pts.push_back(scale * theta);
    }
    return PointConfiguration::from_values(std::move(pts));
}

PointConfiguration rescale_bulk(std::span<const double> lambdas, std::size_t n, double E) {
    require(E > -2.0 && E < 2.0, "argument", "rescale_bulk requires E in (-2, 2)");
    const double nn = static_cast<double>(n);
    const double center = E * std::sqrt(nn);
    const double scale = std::sqrt(nn * (4.0 - E * E)) / (2.0 * std::numbers::pi);
    std::vector<double> pts;
    pts.reserve(lambdas.size());
    for (double lam : lambdas) pts.push_back((lam - center) * scale);
    return PointConfiguration::from_values(std::move(pts));
}

PointConfiguration rescale_edge(std::span<const double> lambdas, std::size_t n) {
    require(n >= 1, "argument", "rescale_edge requires n >= 1");
    const double nn = static_cast<double>(n);
    const double center = 2.0 * std::sqrt(nn);
    const double scale = std::pow(nn, 1.0 / 6.0) / (2.0 * std::numbers::pi);
    std::vector<double> pts;
    pts.reserve(lambdas.size());
    for (double lam : lambdas) pts.push_back((lam - center) * scale);
    return PointConfiguration::from_values(std::move(pts));
}

void write_points_csv(const PointConfiguration& cfg, std::ostream& os) {
    char buf[64];
    for (double p : cfg.points) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", p);
        os << buf;
    }
}

PointConfiguration read_points_csv(std::istream& is) {
    std::vector<double> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            fail("parse", "invalid coordinate at line " + std::to_string(lineno));
        }
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r')) ++pos;
        require(pos == line.size(), "parse", "trailing characters at line " + std::to_string(lineno));
        pts.push_back(v);
    }
    return PointConfiguration::from_values(std::move(pts));
}

}  // namespace stozeta
