#pragma once

#include "omegacloud/tolerance.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace omegacloud {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angles are plain radians. Absolute directions are measured
/// counterclockwise from +x; turns (angular measures) are non-negative and
/// never reduced modulo 2*pi.
using Radians = double;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) noexcept { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2, Point2) noexcept = default;
};

[[nodiscard]] constexpr double dot(Point2 a, Point2 b) noexcept { return a.x * b.x + a.y * b.y; }
[[nodiscard]] constexpr double cross(Point2 a, Point2 b) noexcept { return a.x * b.y - a.y * b.x; }
[[nodiscard]] inline double norm(Point2 a) noexcept { return std::sqrt(a.x * a.x + a.y * a.y); }
[[nodiscard]] inline double distance(Point2 a, Point2 b) noexcept { return norm(a - b); }
[[nodiscard]] inline Point2 unit(Radians direction) noexcept {
    return {std::cos(direction), std::sin(direction)};
}
[[nodiscard]] inline Radians direction_of(Point2 v) noexcept { return std::atan2(v.y, v.x); }

/// Reduce to [0, 2*pi).
[[nodiscard]] Radians normalize_angle(Radians a) noexcept;

/// Diameter of the axis-aligned bounding box; 0 for fewer than two points.
[[nodiscard]] double bbox_diameter(std::span<const Point2> points) noexcept;

struct Circle {
    Point2 center;
    double radius = 0.0;
};

/// Clockwise central angle in [0, 2*pi) from `from` to `to` around `center`.
[[nodiscard]] Radians clockwise_angle(Point2 center, Point2 from, Point2 to) noexcept;

/// Circular arc traversed clockwise from start to end. A measure of 2*pi
/// with start == end is the full circle.
class Arc {
public:
    /// Validates the redundant fields against each other: endpoints on the
    /// circle within tol.pos (then re-projected onto it), measure in
    /// (0, 2*pi], and the clockwise sweep from start reaching end.
    static Arc make(Circle circle, Point2 start, Point2 end, Radians measure, const Tolerance& tol);
    static Arc full_circle(Circle circle, Point2 start, const Tolerance& tol);

    [[nodiscard]] const Circle& circle() const noexcept { return circle_; }
    [[nodiscard]] Point2 start() const noexcept { return start_; }
    [[nodiscard]] Point2 end() const noexcept { return end_; }
    [[nodiscard]] Radians measure() const noexcept { return measure_; }
    [[nodiscard]] bool is_full_circle() const noexcept { return full_; }

    /// Point reached after turning clockwise by `offset` from start.
    [[nodiscard]] Point2 point_at(Radians offset) const noexcept;
    /// Clockwise offset of a point of the circle from start, in [0, 2*pi).
    [[nodiscard]] Radians offset_of(Point2 p) const noexcept;

private:
    Arc() = default;

    Circle circle_;
    Point2 start_;
    Point2 end_;
    Radians measure_ = 0.0;
    bool full_ = false;
};

/// Two rays from `apex` separated by `aperture`, bisected by `direction`.
class Wedge {
public:
    Wedge(Point2 apex, Radians direction, Radians aperture);

    [[nodiscard]] Point2 apex() const noexcept { return apex_; }
    [[nodiscard]] Radians direction() const noexcept { return direction_; }
    [[nodiscard]] Radians aperture() const noexcept { return aperture_; }
    [[nodiscard]] Radians left_arm() const noexcept { return direction_ + 0.5 * aperture_; }
    [[nodiscard]] Radians right_arm() const noexcept { return direction_ - 0.5 * aperture_; }

private:
    Point2 apex_;
    Radians direction_;
    Radians aperture_;
};

/// Strictly convex polygon with clockwise vertices, or a segment (two
/// vertices). Only validate_convex() creates one.
class ConvexPolygon {
public:
    [[nodiscard]] std::span<const Point2> vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] const Point2& operator[](std::size_t i) const noexcept { return vertices_[i]; }
    [[nodiscard]] bool is_segment() const noexcept { return vertices_.size() == 2; }
    [[nodiscard]] double diameter() const noexcept { return bbox_diameter(vertices_); }

private:
    friend ConvexPolygon validate_convex(std::span<const Point2> points);
    explicit ConvexPolygon(std::vector<Point2> v) : vertices_(std::move(v)) {}

    std::vector<Point2> vertices_;
};

/// Accepts either orientation and returns the clockwise polygon.
/// Throws TooFewVertices, DuplicateVertices or NotConvex.
ConvexPolygon validate_convex(std::span<const Point2> points);

/// Internal angle at vertex i, in (0, pi). Throws DegeneratePolygon on a
/// segment.
[[nodiscard]] Radians internal_angle(const ConvexPolygon& p, std::size_t i);

enum class Side { Left, Right };

/// Circle through u and v whose arc on `apex_side` of the directed chord
/// u->v sees the chord under `omega` (radius |uv| / (2 sin omega)).
Circle inscribed_circle(Point2 u, Point2 v, Radians omega, Side apex_side, const Tolerance& tol);

struct WedgeContacts {
    Point2 left;
    Point2 right;
};

/// Second intersections of the two arms with a circle through the apex. An
/// arm tangent to the circle touches it at the apex itself.
WedgeContacts wedge_circle_contacts(const Wedge& w, const Circle& c, const Tolerance& tol);

struct CircleIntersection {
    Point2 point;
    bool tangent = false;
};

/// The intersection of two circles other than their common point u.
CircleIntersection second_circle_intersection(const Circle& c1, const Circle& c2, Point2 u,
                                              const Tolerance& tol);

[[nodiscard]] bool same_circle(const Circle& a, const Circle& b, const Tolerance& tol) noexcept;
[[nodiscard]] inline bool on_circle(const Circle& c, Point2 p, const Tolerance& tol) noexcept {
    return std::abs(distance(c.center, p) - c.radius) <= tol.pos;
}

/// Intersection of the lines through p with direction a and through q with
/// direction b (directions as angles). Lines must not be parallel.
[[nodiscard]] Point2 intersect_lines(Point2 p, Radians a, Point2 q, Radians b) noexcept;

}  // namespace omegacloud
