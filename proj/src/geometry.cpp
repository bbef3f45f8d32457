#include "omegacloud/geometry.hpp"
#include "omegacloud/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace omegacloud {

Radians normalize_angle(Radians a) noexcept {
    Radians r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double bbox_diameter(std::span<const Point2> points) noexcept {
    if (points.size() < 2) return 0.0;
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = hi_x;
    for (const Point2& p : points) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

Radians clockwise_angle(Point2 center, Point2 from, Point2 to) noexcept {
    return normalize_angle(direction_of(from - center) - direction_of(to - center));
}

namespace {

void check_circle(const Circle& c) {
    if (!(c.radius > 0.0) || !std::isfinite(c.radius) || !std::isfinite(c.center.x) ||
        !std::isfinite(c.center.y)) {
        throw Error(ErrorCode::InvalidArc, "circle radius must be finite and positive");
    }
}

}  // namespace

Arc Arc::make(Circle circle, Point2 start, Point2 end, Radians measure, const Tolerance& tol) {
    check_circle(circle);
    if (!(measure > 0.0) || measure > kTwoPi + tol.ang) {
        throw Error(ErrorCode::InvalidArc, "arc measure must lie in (0, 2pi]");
    }
    if (!on_circle(circle, start, tol) || !on_circle(circle, end, tol)) {
        throw Error(ErrorCode::InvalidArc, "arc endpoint is not on its supporting circle");
    }
    Arc arc;
    arc.circle_ = circle;
    arc.start_ = start;
    arc.measure_ = std::min(measure, kTwoPi);
    arc.full_ = kTwoPi - measure <= tol.ang && distance(start, end) <= tol.pos;
    if (arc.full_) {
        arc.measure_ = kTwoPi;
        arc.end_ = arc.start_;
        return arc;
    }
    arc.end_ = end;
    if (distance(arc.point_at(arc.measure_), arc.end_) > tol.pos) {
        throw Error(ErrorCode::InvalidArc, "arc measure does not match its endpoints");
    }
    return arc;
}

Arc Arc::full_circle(Circle circle, Point2 start, const Tolerance& tol) {
    return make(circle, start, start, kTwoPi, tol);
}

Point2 Arc::point_at(Radians offset) const noexcept {
    const Radians phi = direction_of(start_ - circle_.center) - offset;
    return circle_.center + circle_.radius * unit(phi);
}

Radians Arc::offset_of(Point2 p) const noexcept {
    return clockwise_angle(circle_.center, start_, p);
}

Wedge::Wedge(Point2 apex, Radians direction, Radians aperture)
    : apex_(apex), direction_(direction), aperture_(aperture) {
    if (!(aperture > 0.0 && aperture < kPi)) {
        throw Error(ErrorCode::InvalidWedge, "wedge aperture must lie in (0, pi)");
    }
}

ConvexPolygon validate_convex(std::span<const Point2> points) {
    const std::size_t n = points.size();
    if (n < 2) throw Error(ErrorCode::TooFewVertices, "a polygon needs at least two vertices");
    for (const Point2& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorCode::NotConvex, "vertex coordinates must be finite");
        }
    }
    const Tolerance tol = Tolerance::for_scale(bbox_diameter(points));
    for (std::size_t i = 0; i < n; ++i) {
        if (distance(points[i], points[(i + 1) % n]) <= tol.pos) {
            throw Error(ErrorCode::DuplicateVertices,
                        "vertices " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                            " coincide");
        }
    }
    std::vector<Point2> v(points.begin(), points.end());
    if (n == 2) return ConvexPolygon(std::move(v));

    // Strict convexity: every turn has the same sign, none is flat, and the
    // boundary winds exactly once.
    double total_turn = 0.0;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = v[i] - v[(i + n - 1) % n];
        const Point2 b = v[(i + 1) % n] - v[i];
        const double turn = std::atan2(cross(a, b), dot(a, b));
        if (std::abs(turn) <= tol.ang || kPi - std::abs(turn) <= tol.ang) {
            throw Error(ErrorCode::NotConvex, "degenerate turn at vertex " + std::to_string(i));
        }
        const int s = turn > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign) {
            throw Error(ErrorCode::NotConvex, "reflex vertex " + std::to_string(i));
        }
        sign = s;
        total_turn += turn;
    }
    if (std::abs(std::abs(total_turn) - kTwoPi) > 1e-6) {
        throw Error(ErrorCode::NotConvex, "boundary winds more than once");
    }
    if (sign > 0) std::reverse(v.begin(), v.end());
    return ConvexPolygon(std::move(v));
}

Radians internal_angle(const ConvexPolygon& p, std::size_t i) {
    const std::size_t n = p.size();
    if (n < 3) throw Error(ErrorCode::DegeneratePolygon, "a segment has no internal angles");
    const Point2 a = p[(i + n - 1) % n] - p[i];
    const Point2 b = p[(i + 1) % n] - p[i];
    return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

Circle inscribed_circle(Point2 u, Point2 v, Radians omega, Side apex_side, const Tolerance& tol) {
    if (!(omega > 0.0 && omega < kPi)) {
        throw Error(ErrorCode::OmegaOutOfRange, "omega must lie in (0, pi)");
    }
    const Point2 chord = v - u;
    const double len = norm(chord);
    if (len <= tol.pos) throw Error(ErrorCode::DegenerateChord, "chord endpoints coincide");
    const Point2 left_normal{-chord.y / len, chord.x / len};
    const Point2 normal = apex_side == Side::Left ? left_normal : -1.0 * left_normal;
    const Point2 mid = 0.5 * (u + v);
    // The centre sits on the apex side for acute omega and across the chord
    // for obtuse omega; cot(omega) carries the sign.
    return Circle{mid + (0.5 * len * std::cos(omega) / std::sin(omega)) * normal,
                  len / (2.0 * std::sin(omega))};
}

WedgeContacts wedge_circle_contacts(const Wedge& w, const Circle& c, const Tolerance& tol) {
    if (!on_circle(c, w.apex(), tol)) {
        throw Error(ErrorCode::ApexNotOnCircle, "wedge apex is not on the circle");
    }
    const Point2 rel = w.apex() - c.center;
    auto hit = [&](Radians arm) {
        const Point2 e = unit(arm);
        const double s = -2.0 * dot(e, rel);
        if (s < -tol.pos) throw Error(ErrorCode::ArmMissesCircle, "wedge arm points away from the circle");
        return w.apex() + std::max(s, 0.0) * e;
    };
    return {hit(w.left_arm()), hit(w.right_arm())};
}

bool same_circle(const Circle& a, const Circle& b, const Tolerance& tol) noexcept {
    return distance(a.center, b.center) <= tol.pos && std::abs(a.radius - b.radius) <= tol.pos;
}

CircleIntersection second_circle_intersection(const Circle& c1, const Circle& c2, Point2 u,
                                              const Tolerance& tol) {
    if (same_circle(c1, c2, tol)) throw Error(ErrorCode::CoCircular, "circles coincide");
    if (!on_circle(c1, u, tol) || !on_circle(c2, u, tol)) {
        throw Error(ErrorCode::PointNotShared, "point is not on both circles");
    }
    const Point2 axis = c2.center - c1.center;
    const double len2 = dot(axis, axis);
    if (len2 == 0.0) throw Error(ErrorCode::PointNotShared, "concentric circles share no point");
    // Reflect u across the line of centres.
    const Point2 rel = u - c1.center;
    const Point2 foot = c1.center + (dot(rel, axis) / len2) * axis;
    const Point2 x = 2.0 * foot - u;
    if (distance(x, u) <= tol.pos) return {u, true};
    return {x, false};
}

Point2 intersect_lines(Point2 p, Radians a, Point2 q, Radians b) noexcept {
    const Point2 ea = unit(a);
    const Point2 eb = unit(b);
    const double s = cross(q - p, eb) / cross(ea, eb);
    return p + s * ea;
}

}  // namespace omegacloud
