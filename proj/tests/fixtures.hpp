#pragma once

#include "omegacloud/geometry.hpp"

#include <cmath>
#include <vector>

namespace fixtures {

using omegacloud::kPi;
using omegacloud::kTwoPi;
using omegacloud::Point2;

inline const double kH = std::sqrt(3.0) / 2.0;

inline std::vector<Point2> unit_square() { return {{0, 0}, {0, 1}, {1, 1}, {1, 0}}; }
inline std::vector<Point2> centred_square() { return {{-0.5, -0.5}, {-0.5, 0.5}, {0.5, 0.5}, {0.5, -0.5}}; }
inline std::vector<Point2> triangle() { return {{0, 0}, {0.5, kH}, {1, 0}}; }

/// k vertices on the unit circle, clockwise from angle `start`.
inline std::vector<Point2> regular(int k, double start = 0.0) {
    std::vector<Point2> v;
    for (int i = 0; i < k; ++i) v.push_back(omegacloud::unit(start - kTwoPi * i / k));
    return v;
}

/// Triangle a, c, e with angles 14pi/45 at a, pi/3 at c, 16pi/45 at e. Its
/// maximal cloud at 2pi/3 is also the maximal cloud at 5pi/6 of a hexagon.
inline std::vector<Point2> two_reading_triangle() {
    const double A = 14 * kPi / 45, E = 16 * kPi / 45;
    const Point2 c = omegacloud::intersect_lines({0, 0}, A, {1, 0}, kPi - E);
    return {{0, 0}, c, {1, 0}};
}

/// Pentagon whose vertices at 90, 30 and -30 degrees lie on the unit
/// circle. With omega = 5pi/6 the edges between them are one-window arcs of
/// that circle, so the middle vertex becomes a hidden pivot between two
/// strictly narrow ones. The other two vertices are off the circle.
inline std::vector<Point2> hexagon_pentagon() {
    return {omegacloud::unit(kPi / 2), omegacloud::unit(kPi / 6), omegacloud::unit(-kPi / 6), {0.0, -1.3},
            {-1.0, 0.2}};
}

}  // namespace fixtures
