#pragma once

#include "omegacloud/geometry.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace omegacloud {

enum class PivotKind { Plain, Narrow, StrictlyNarrow, Hidden };

struct Pivot {
    Point2 location;
    PivotKind kind = PivotKind::Plain;
    std::size_t index = 0;  // pivots[i] joins arcs[i-1] and arcs[i]
};

/// Closed clockwise chain of arcs. A single full-circle arc carries no
/// pivots.
class Cloud {
public:
    /// Checks closure and, for maximal clouds, that no two consecutive arcs
    /// share a circle. `kinds` annotates the pivots; when empty, pivots are
    /// Plain unless their arcs are co-circular (Hidden).
    static Cloud make(std::vector<Arc> arcs, std::optional<Radians> omega, bool maximal,
                      const Tolerance& tol, std::vector<PivotKind> kinds = {});

    /// Tolerance scaled to the arcs' endpoints (or the circle, for a single
    /// arc).
    static Tolerance tolerance_for(const std::vector<Arc>& arcs);

    [[nodiscard]] const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    [[nodiscard]] const std::vector<Pivot>& pivots() const noexcept { return pivots_; }
    [[nodiscard]] std::size_t size() const noexcept { return arcs_.size(); }
    [[nodiscard]] const Arc& arc(std::size_t i) const noexcept { return arcs_[i % arcs_.size()]; }
    [[nodiscard]] std::size_t next(std::size_t i) const noexcept { return (i + 1) % arcs_.size(); }
    [[nodiscard]] std::size_t prev(std::size_t i) const noexcept {
        return (i + arcs_.size() - 1) % arcs_.size();
    }
    [[nodiscard]] std::optional<Radians> omega() const noexcept { return omega_; }
    [[nodiscard]] bool maximal() const noexcept { return maximal_; }
    [[nodiscard]] bool is_single_circle() const noexcept { return arcs_.size() == 1; }
    [[nodiscard]] Radians total_measure() const noexcept { return total_; }
    [[nodiscard]] const Tolerance& tolerance() const noexcept { return tol_; }
    [[nodiscard]] double diameter() const noexcept { return diameter_; }

private:
    Cloud() = default;

    std::vector<Arc> arcs_;
    std::vector<Pivot> pivots_;
    std::optional<Radians> omega_;
    bool maximal_ = false;
    Radians total_ = 0.0;
    Tolerance tol_;
    double diameter_ = 0.0;
};

/// A point on a cloud: an arc and the clockwise offset from its start.
struct CloudPoint {
    std::size_t arc = 0;
    Radians offset = 0.0;
    Point2 point;
};

[[nodiscard]] CloudPoint pivot_point(const Cloud& c, std::size_t pivot);
[[nodiscard]] CloudPoint cloud_point(const Cloud& c, std::size_t arc, Radians offset);

/// Locates a point given by coordinates; throws InvalidArc when it is not
/// on the cloud.
[[nodiscard]] CloudPoint locate(const Cloud& c, Point2 p);

/// Sum of measures traversed clockwise from s to t; 0 when s == t.
[[nodiscard]] Radians turn(const Cloud& c, const CloudPoint& s, const CloudPoint& t);

/// The point w with turn(c, s, w) == tau, snapped onto a pivot when tau
/// reaches an arc boundary within the cloud's angular tolerance. Throws
/// TurnOutOfRange unless 0 <= tau <= total measure.
[[nodiscard]] CloudPoint point_at_turn(const Cloud& c, const CloudPoint& s, Radians tau);

/// Walks a cloud clockwise, counting the pivots it crosses.
class CloudCursor {
public:
    CloudCursor(const Cloud& c, const CloudPoint& at, std::size_t* crossings = nullptr);

    void advance(Radians tau);
    /// Moves to the start of the next arc; returns the turn covered.
    Radians advance_to_pivot();

    [[nodiscard]] bool at_pivot() const noexcept { return offset_ == 0.0; }
    [[nodiscard]] std::size_t arc() const noexcept { return arc_; }
    [[nodiscard]] Radians offset() const noexcept { return offset_; }
    /// Total turn walked since construction.
    [[nodiscard]] Radians travelled() const noexcept { return travelled_; }
    [[nodiscard]] CloudPoint point() const;

private:
    void step_to_next_arc();

    const Cloud* cloud_;
    std::size_t arc_;
    Radians offset_;
    Radians travelled_ = 0.0;
    std::size_t* crossings_;
};

/// The omega-cloud of a convex polygon (a segment is accepted too), with
/// pivots classified as narrow / strictly narrow / hidden.
[[nodiscard]] Cloud omega_cloud(const ConvexPolygon& p, Radians omega);

/// Merges consecutive co-circular arcs; the arc holding the old arc 0 comes
/// first.
[[nodiscard]] Cloud maximal_cloud(const Cloud& c);
/// Same, deciding co-circularity with a looser tolerance.
[[nodiscard]] Cloud maximal_cloud(const Cloud& c, const Tolerance& tol);

struct MeasureReport {
    Radians actual = 0.0;
    Radians expected = 0.0;
    struct Deficit {
        std::size_t vertex;
        Radians deficit;  // omega - internal angle
    };
    std::vector<Deficit> deficits;
};

/// Checks that the arc measures of c sum to 2(2pi - sum of narrow
/// deficits). Throws IdentityViolated otherwise.
MeasureReport total_measure_check(const Cloud& c, const ConvexPolygon& p, Radians omega);

struct CloudDifference {
    bool same_count = false;
    double max_position_error = 0.0;  // centres, radii, endpoints
    double max_measure_error = 0.0;
};

/// Arc-by-arc comparison after aligning b's arc sequence to a's first arc.
[[nodiscard]] CloudDifference compare_clouds(const Cloud& a, const Cloud& b);

/// Distance from a point to the nearest point of the cloud.
[[nodiscard]] double distance_to_cloud(const Cloud& c, Point2 p);

}  // namespace omegacloud
