#pragma once

#include "omegacloud/cloud.hpp"

#include <cstddef>
#include <vector>

namespace omegacloud {

/// Oriented line through `point` with direction angle `direction`.
struct Line {
    Point2 point;
    Radians direction = 0.0;
};

/// A strictly narrow vertex found by the first pass, with the supporting
/// lines of its two edges. `left_line` runs along the edge arriving at the
/// vertex, `right_line` along the edge leaving it (clockwise order).
struct NarrowRecord {
    CloudPoint pivot;
    Line left_line;
    Line right_line;
    Radians interior_angle = 0.0;
};

struct ReconstructOptions {
    /// Absolute uncertainty of omega (e.g. from a rounded command-line
    /// value); widens the tolerances accordingly.
    double omega_uncertainty = 0.0;
};

struct ReconstructionResult {
    ConvexPolygon polygon;
    Radians omega = 0.0;
    bool certified = false;
    std::size_t pivot_visits = 0;  // pivot crossings over both passes
    std::size_t working_set = 0;   // records held plus fixed state
    std::size_t narrow_count = 0;  // strictly narrow records
    double certification_error = 0.0;
};

/// Wedge directions at a narrow pivot, from the tangents of its two
/// incident circles: `arrival` when the apex reaches the vertex, `departure`
/// when it leaves. The wedge stalls for arrival - departure = omega - theta.
struct PivotDirections {
    Radians arrival = 0.0;
    Radians departure = 0.0;
};
[[nodiscard]] PivotDirections narrow_pivot_directions(const Cloud& c, std::size_t pivot, Radians omega);

/// Direction of W(x) for a point x whose preceding turn of 2(pi - omega)
/// holds no strictly narrow pivot: the right arm of W(x) runs through the
/// point that far behind x.
[[nodiscard]] Radians partner_direction(const Cloud& c, const CloudPoint& x, Radians omega);

enum class Span { Portion, FullLoop };

/// Vertices of the polygon chain seen while the apex walks from u to v
/// (or once around, for FullLoop) starting with wedge direction `dir_r_u`.
/// Throws StrictNarrowEncountered when the walk crosses a strictly narrow
/// pivot and ContactOffCircle on numerical failure.
[[nodiscard]] std::vector<Point2> chain_reconstruct(const Cloud& c, const CloudPoint& u, const CloudPoint& v,
                                                    Radians dir_r_u, Radians omega, Span span = Span::Portion);
[[nodiscard]] std::vector<Point2> chain_reconstruct(const Cloud& c, const CloudPoint& u, const CloudPoint& v,
                                                    Radians dir_r_u, Radians omega, Span span,
                                                    const Tolerance& tol, std::size_t* crossings);

/// One pass over the pivots of a maximal cloud; returns the strictly narrow
/// vertices. Throws InvalidCloud on an arc longer than 2(pi - omega) that is
/// not an integer multiple of it.
[[nodiscard]] std::vector<NarrowRecord> first_pass(const Cloud& c, Radians omega, const ReconstructOptions& opts = {},
                                                   std::size_t* visits = nullptr);

[[nodiscard]] ConvexPolygon second_pass(const Cloud& c, Radians omega, const std::vector<NarrowRecord>& s,
                                        const ReconstructOptions& opts = {}, std::size_t* visits = nullptr);

/// Reconstructs the polygon whose maximal omega-cloud is c and certifies it
/// by recomputing that cloud. Throws SingleCircleAmbiguous, InvalidCloud or
/// CertificationFailed.
[[nodiscard]] ReconstructionResult reconstruct_aware(const Cloud& c, Radians omega,
                                                     const ReconstructOptions& opts = {});

/// Recovers omega from the cloud itself, then reconstructs. Throws
/// InvalidCloud, NotASegment, AmbiguousOmega or SingleCircleAmbiguous.
[[nodiscard]] ReconstructionResult reconstruct_oblivious(const Cloud& c, const ReconstructOptions& opts = {});

/// Tolerances used for certification against a cloud.
[[nodiscard]] Tolerance certification_tolerance(const Cloud& c, Radians omega, const ReconstructOptions& opts);

}  // namespace omegacloud
