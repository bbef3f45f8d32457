#pragma once

#include "omegacloud/cloud.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace omegacloud {

/// The minimal omega-wedge with bisector direction d, found by direct
/// support-point search (independent of the arc construction).
[[nodiscard]] Wedge minimal_wedge_at_direction(const ConvexPolygon& p, Radians d, Radians omega);

/// Apices of the minimal wedges at m directions d_k = -2*pi*k/m, so
/// consecutive samples advance clockwise. Requires m >= 3.
[[nodiscard]] std::vector<Point2> sampled_cloud(const ConvexPolygon& p, Radians omega, std::size_t m);

/// n points in strictly convex position on a random axis-aligned ellipse,
/// deterministic per seed. Throws GenerationFailed after bounded retries.
[[nodiscard]] ConvexPolygon random_convex_polygon(std::size_t n, std::uint64_t seed);

/// Samples omega uniformly in [lo, hi], resampling until it keeps `margin`
/// away from every internal angle of p and from pi(1 - 1/k), k <= 64.
[[nodiscard]] Radians sample_omega(const ConvexPolygon& p, std::mt19937_64& rng, Radians lo, Radians hi,
                                   Radians margin = 1e-4);

struct MatchReport {
    double max_vertex_error = 0.0;
    double max_arc_error = 0.0;
    bool verdict = false;
};

/// Same vertex count and every vertex within tol after cyclic alignment
/// (q is rotated to start at its vertex nearest p[0]).
[[nodiscard]] MatchReport match_polygons(const ConvexPolygon& p, const ConvexPolygon& q, double tol);

/// Arc-by-arc comparison. Measure errors count as lengths (times the
/// diameter of a) in max_arc_error.
[[nodiscard]] MatchReport match_clouds(const Cloud& a, const Cloud& b, double tol);

}  // namespace omegacloud
