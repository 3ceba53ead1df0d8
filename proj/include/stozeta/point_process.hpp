#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "stozeta/common.hpp"

namespace stozeta {

// One sampled realization of a simple point process on the real line, on the
// unfolded scale.  Points are strictly increasing; coincidences closer than
// kDuplicateTol are rejected at construction (simple process).
struct PointConfiguration {
    static constexpr double kDuplicateTol = 1e-12;

    std::vector<double> points;  // strictly ascending
    bool origin_excluded = true;

    static PointConfiguration from_values(std::vector<double> values);

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }

    // iterators over points with |x| <= A (ascending)
    std::span<const double> in_symmetric_window(double A) const;
};

struct SignedCount {
    std::int64_t value = 0;
};

// Eigenangles on the unit circle, theta_j in (-pi, pi]; n is the unfolding
// scale (matrix dimension), which may exceed the angle count when a
// deterministic eigenvalue has been removed.
struct CircleConfiguration {
    std::vector<double> angles;
    std::size_t n = 0;
};

// Signed counting function M(x): #points in [0,x] for x >= 0, minus the
// number of points in the open interval (x,0) for x < 0.
SignedCount counting(const PointConfiguration& cfg, double x);

std::size_t interval_count(const PointConfiguration& cfg, double a, double b,
                           bool closed_left, bool closed_right);

// x = n*theta/(2 pi), mapping (-pi, pi] onto (-n/2, n/2].  Requires that no
// angle is exactly 0 (the point at 1 must be removed by the caller first).
PointConfiguration unfold_circle(const CircleConfiguration& circle);

// Bulk rescaling around energy E in (-2,2):
//   x = (lambda - E sqrt(n)) * sqrt(n (4 - E^2)) / (2 pi)
PointConfiguration rescale_bulk(std::span<const double> lambdas, std::size_t n, double E);

// Edge rescaling: x = n^{1/6} (lambda - 2 sqrt(n)) / (2 pi)
PointConfiguration rescale_edge(std::span<const double> lambdas, std::size_t n);

// CSV serialization: one coordinate per line, 17 significant digits, ascending.
void write_points_csv(const PointConfiguration& cfg, std::ostream& os);
PointConfiguration read_points_csv(std::istream& is);

}  // namespace stozeta
