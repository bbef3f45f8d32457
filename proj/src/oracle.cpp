#include "omegacloud/oracle.hpp"
#include "omegacloud/error.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace omegacloud {

namespace {

std::size_t support(std::span<const Point2> v, Radians normal) {
    const Point2 e = unit(normal);
    std::size_t best = 0;
    for (std::size_t j = 1; j < v.size(); ++j) {
        if (dot(v[j], e) > dot(v[best], e)) best = j;
    }
    const std::size_t later = (best + 1) % v.size();
    const double slack = 1e-15 * bbox_diameter(v);
    if (dot(v[later], e) >= dot(v[best], e) - slack) best = later;
    return best;
}

}  // namespace

Wedge minimal_wedge_at_direction(const ConvexPolygon& p, Radians d, Radians omega) {
    const Radians left = d + 0.5 * omega;
    const Radians right = d - 0.5 * omega;
    // p lies right of the left arm and left of the right arm.
    const Point2 a = p[support(p.vertices(), left + 0.5 * kPi)];
    const Point2 b = p[support(p.vertices(), right - 0.5 * kPi)];
    return Wedge(intersect_lines(a, left, b, right), d, omega);
}

std::vector<Point2> sampled_cloud(const ConvexPolygon& p, Radians omega, std::size_t m) {
    if (m < 3) throw std::invalid_argument("sampled_cloud needs at least 3 directions");
    std::vector<Point2> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const Radians d = -kTwoPi * static_cast<double>(k) / static_cast<double>(m);
        out.push_back(minimal_wedge_at_direction(p, d, omega).apex());
    }
    return out;
}

ConvexPolygon random_convex_polygon(std::size_t n, std::uint64_t seed) {
    if (n < 3 || n > 100000) throw Error(ErrorCode::GenerationFailed, "vertex count must lie in [3, 100000]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
    const double eps = base_epsilon();
    for (int attempt = 0; attempt < 64; ++attempt) {
        // Gaps are bounded below so large n stays clear of flat vertices.
        std::vector<double> gaps(n);
        double sum = 0.0;
        for (double& g : gaps) {
            g = 0.25 + unit_interval(rng);
            sum += g;
        }
        const double rx = 0.5 + 1.5 * unit_interval(rng);
        const double ry = 0.5 + 1.5 * unit_interval(rng);
        const Point2 shift{4.0 * unit_interval(rng) - 2.0, 4.0 * unit_interval(rng) - 2.0};
        double angle = kTwoPi * unit_interval(rng);
        std::vector<Point2> pts(n);
        for (std::size_t i = 0; i < n; ++i) {
            pts[i] = shift + Point2{rx * std::cos(angle), ry * std::sin(angle)};
            angle -= kTwoPi * gaps[i] / sum;  // clockwise
        }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const Point2 a = pts[(i + n - 1) % n] - pts[i];
            const Point2 b = pts[(i + 1) % n] - pts[i];
            const double theta = std::atan2(std::abs(cross(a, b)), dot(a, b));
            ok = theta > eps && theta < kPi - eps;
        }
        if (!ok) continue;
        try {
            return validate_convex(pts);
        } catch (const Error&) {
            continue;
        }
    }
    throw Error(ErrorCode::GenerationFailed, "no convex polygon after 64 attempts (n = " + std::to_string(n) + ")");
}

Radians sample_omega(const ConvexPolygon& p, std::mt19937_64& rng, Radians lo, Radians hi, Radians margin) {
    std::uniform_real_distribution<double> dist(lo, hi);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const Radians w = dist(rng);
        bool ok = true;
        for (std::size_t i = 0; i < p.size() && ok && !p.is_segment(); ++i) {
            ok = std::abs(internal_angle(p, i) - w) >= margin;
        }
        for (int k = 2; k <= 64 && ok; ++k) ok = std::abs(kPi * (1.0 - 1.0 / k) - w) >= margin;
        if (ok) return w;
    }
    throw Error(ErrorCode::GenerationFailed, "no admissible omega in range");
}

MatchReport match_polygons(const ConvexPolygon& p, const ConvexPolygon& q, double tol) {
    MatchReport r;
    if (p.size() != q.size()) {
        r.max_vertex_error = std::numeric_limits<double>::infinity();
        return r;
    }
    const std::size_t n = p.size();
    std::size_t shift = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (distance(p[0], q[k]) < distance(p[0], q[shift])) shift = k;
    }
    for (std::size_t i = 0; i < n; ++i) {
        r.max_vertex_error = std::max(r.max_vertex_error, distance(p[i], q[(i + shift) % n]));
    }
    r.verdict = r.max_vertex_error <= tol;
    return r;
}

MatchReport match_clouds(const Cloud& a, const Cloud& b, double tol) {
    const CloudDifference d = compare_clouds(a, b);
    MatchReport r;
    const double scale = a.diameter() > 0.0 ? a.diameter() : 1.0;
    r.max_arc_error = std::max(d.max_position_error, d.max_measure_error * scale);
    r.verdict = d.same_count && r.max_arc_error <= tol;
    return r;
}

}  // namespace omegacloud
