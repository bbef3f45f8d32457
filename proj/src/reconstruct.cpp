#include "omegacloud/reconstruct.hpp"
#include "omegacloud/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace omegacloud {

namespace {

// Fixed state of the two passes besides the record list: cursor, wedge
// direction, the two chain heads and the pivot under test.
constexpr std::size_t kFixedState = 6;

void check_omega(Radians omega) {
    if (!(omega > 0.0 && omega < kPi)) throw Error(ErrorCode::OmegaOutOfRange, "omega must lie in (0, pi)");
}

Tolerance working_tolerance(const Cloud& c, Radians omega, const ReconstructOptions& opts) {
    return c.tolerance().widened_for_omega(omega, opts.omega_uncertainty, c.diameter());
}

// Wrap into (-pi, pi].
Radians wrap_signed(Radians a) {
    Radians r = normalize_angle(a);
    return r > kPi ? r - kTwoPi : r;
}

Radians ccw_tangent(const Circle& c, Point2 p) {
    const Point2 r = p - c.center;
    return direction_of(Point2{-r.y, r.x});
}

Radians cw_tangent(const Circle& c, Point2 p) {
    const Point2 r = p - c.center;
    return direction_of(Point2{r.y, -r.x});
}

std::size_t find_near(const std::vector<Point2>& chain, Point2 target, double tol) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (distance(chain[i], target) <= tol) return i;
    }
    return chain.size();
}

void push_distinct(std::vector<Point2>& out, Point2 p, double tol) {
    if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
}

std::vector<Point2> dedupe_cyclic(const std::vector<Point2>& pts, double tol) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const Point2& p : pts) push_distinct(out, p, tol);
    while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
    return out;
}

// Whether the circles of arcs j-1 and j meet again at u (besides their
// shared pivot j). Near a narrow vertex u all these circles pass through u;
// elsewhere the second meeting point is a polygon vertex, well away from the
// cloud. This is much better conditioned on fine clouds than asking whether
// one circle passes near u.
bool circles_meet_at(const Cloud& c, std::size_t j, Point2 u, const Tolerance& tol) {
    const double near = std::max(100.0 * tol.pos, 1e-7 * std::max(c.diameter(), 1e-300));
    try {
        const CircleIntersection x =
            second_circle_intersection(c.arc(j + c.size() - 1).circle(), c.arc(j).circle(), c.arc(j).start(), tol);
        return !x.tangent && distance(x.point, u) <= near;
    } catch (const Error&) {
        return false;
    }
}

const Cloud& as_maximal(const Cloud& c, std::optional<Cloud>& holder) {
    if (c.maximal()) return c;
    holder.emplace(maximal_cloud(c));
    return *holder;
}

}  // namespace

Tolerance certification_tolerance(const Cloud& c, Radians omega, const ReconstructOptions& opts) {
    const Tolerance base = working_tolerance(c, omega, opts);
    const double scale = c.diameter() > 0.0 ? c.diameter() : 1.0;
    Tolerance t = base;
    t.pos = std::max(1e-6 * scale, 100.0 * base.pos);
    t.ang = std::max(1e-6, 100.0 * base.ang);
    return t;
}

PivotDirections narrow_pivot_directions(const Cloud& c, std::size_t pivot, Radians omega) {
    const Point2 u = c.arc(pivot).start();
    PivotDirections d;
    d.departure = ccw_tangent(c.arc(pivot).circle(), u) + 0.5 * omega;
    const Radians arrival = cw_tangent(c.arc(c.prev(pivot)).circle(), u) - 0.5 * omega;
    d.arrival = d.departure + wrap_signed(arrival - d.departure);
    return d;
}

Radians partner_direction(const Cloud& c, const CloudPoint& x, Radians omega) {
    const Radians span = 2.0 * (kPi - omega);
    if (c.total_measure() <= span) {
        throw Error(ErrorCode::InvalidCloud, "cloud is shorter than one narrow window");
    }
    const CloudPoint behind = point_at_turn(c, x, c.total_measure() - span);
    return direction_of(behind.point - x.point) + 0.5 * omega;
}

std::vector<Point2> chain_reconstruct(const Cloud& c, const CloudPoint& u, const CloudPoint& v, Radians dir_r_u,
                                      Radians omega, Span span) {
    return chain_reconstruct(c, u, v, dir_r_u, omega, span, c.tolerance(), nullptr);
}

std::vector<Point2> chain_reconstruct(const Cloud& c, const CloudPoint& u, const CloudPoint& v, Radians dir_r_u,
                                      Radians omega, Span span, const Tolerance& tol, std::size_t* crossings) {
    check_omega(omega);
    if (c.is_single_circle()) {
        throw Error(ErrorCode::SingleCircleAmbiguous, "a single circle does not fix the vertices");
    }
    const Radians window = 2.0 * (kPi - omega);
    const Radians total = span == Span::FullLoop ? c.total_measure() : turn(c, u, v);
    if (total <= tol.snap) return {};

    std::vector<Point2> left, right;
    std::optional<WedgeContacts> last;
    CloudCursor cursor(c, u, crossings);
    Radians d = dir_r_u;
    Radians remaining = total;
    while (remaining > tol.snap) {
        const Arc& arc = c.arc(cursor.arc());
        Radians step = std::min(arc.measure() - cursor.offset(), remaining);
        if (arc.measure() > window + tol.ang) {
            // A merged arc hides narrow vertices every `window` of turn; walk
            // it one window at a time so each hidden vertex is a contact.
            const double t = std::round(arc.measure() / window);
            const double phase = std::remainder(cursor.offset(), window);
            if (std::abs(arc.measure() - t * window) > t * tol.ang || std::abs(phase) > tol.ang) {
                throw Error(ErrorCode::StrictNarrowEncountered, "merged arc entered off its hidden vertices");
            }
            // The last window takes whatever rounding slack is left.
            if (step > window + t * tol.ang) step = window;
        }
        const Point2 p = cursor.offset() == 0.0 ? arc.start() : arc.point_at(cursor.offset());
        WedgeContacts w{};
        try {
            w = wedge_circle_contacts(Wedge(p, d, omega), arc.circle(), tol);
        } catch (const Error& e) {
            throw Error(ErrorCode::ContactOffCircle, std::string("wedge lost the cloud: ") + e.what());
        }
        if (last) {
            // Across a pivot at most one contact moves on, unless the apex
            // sits on a vertex; either way some contact point carries over.
            const bool linked = distance(w.left, last->left) <= tol.pos ||
                                distance(w.right, last->right) <= tol.pos ||
                                distance(w.right, last->left) <= tol.pos;
            if (!linked) {
                throw Error(ErrorCode::StrictNarrowEncountered,
                            "wedge direction jumps at pivot " + std::to_string(cursor.arc()));
            }
        }
        last = w;
        push_distinct(left, w.left, tol.pos);
        push_distinct(right, w.right, tol.pos);
        d -= 0.5 * step;
        cursor.advance(step);
        remaining -= step;
    }

    // The right contact trails the left one: report the right chain until it
    // reaches where the left chain began, then the left chain until it
    // reaches where the right chain began.
    std::vector<Point2> out(right.begin(),
                            right.begin() + static_cast<std::ptrdiff_t>(find_near(right, left.front(), tol.pos)));
    const std::size_t cut = find_near(left, right.front(), tol.pos);
    for (std::size_t i = 0; i < cut; ++i) push_distinct(out, left[i], tol.pos);
    return out;
}

std::vector<NarrowRecord> first_pass(const Cloud& c, Radians omega, const ReconstructOptions& opts,
                                     std::size_t* visits) {
    check_omega(omega);
    if (c.is_single_circle()) {
        throw Error(ErrorCode::SingleCircleAmbiguous, "a single circle does not fix the vertices");
    }
    const Tolerance tol = working_tolerance(c, omega, opts);
    const Radians window = 2.0 * (kPi - omega);
    std::vector<NarrowRecord> records;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (visits != nullptr) ++*visits;
        const Radians m = c.arc(i).measure();
        bool narrow = false;
        if (m > window + tol.ang) {
            const double t = std::round(m / window);
            if (t < 2.0 || std::abs(m - t * window) > t * tol.ang) {
                throw Error(ErrorCode::InvalidCloud, "arc " + std::to_string(i) + " has measure " +
                                                         std::to_string(m) +
                                                         ", not a whole multiple of 2(pi - omega)");
            }
            narrow = true;
        } else if (m >= window - tol.ang) {
            narrow = true;
        } else {
            // Every arc within one window after a narrow vertex has its
            // circle through that vertex.
            narrow = c.size() > 2 && circles_meet_at(c, i + 1, c.arc(i).start(), tol);
        }
        if (!narrow) continue;

        const PivotDirections dirs = narrow_pivot_directions(c, i, omega);
        const Radians stall = wrap_signed(dirs.arrival - dirs.departure);
        if (stall < -tol.ang) {
            throw Error(ErrorCode::InvalidCloud, "pivot " + std::to_string(i) + " is narrow but wider than omega");
        }
        if (stall <= tol.ang) continue;
        NarrowRecord rec;
        rec.pivot = pivot_point(c, i);
        rec.left_line = Line{rec.pivot.point, dirs.arrival - 0.5 * omega + kPi};
        rec.right_line = Line{rec.pivot.point, dirs.departure + 0.5 * omega};
        rec.interior_angle = omega - stall;
        records.push_back(rec);
    }
    return records;
}

ConvexPolygon second_pass(const Cloud& c, Radians omega, const std::vector<NarrowRecord>& s,
                          const ReconstructOptions& opts, std::size_t* visits) {
    check_omega(omega);
    const Tolerance tol = working_tolerance(c, omega, opts);
    std::vector<Point2> pts;
    if (s.empty()) {
        const CloudPoint x = pivot_point(c, 0);
        pts = chain_reconstruct(c, x, x, partner_direction(c, x, omega), omega, Span::FullLoop, tol, visits);
    } else if (s.size() == 1) {
        const NarrowRecord& r = s.front();
        pts = chain_reconstruct(c, r.pivot, r.pivot, r.right_line.direction - 0.5 * omega, omega, Span::FullLoop,
                                tol, visits);
    } else {
        for (std::size_t k = 0; k < s.size(); ++k) {
            const NarrowRecord& r = s[k];
            const NarrowRecord& next = s[(k + 1) % s.size()];
            const std::vector<Point2> part = chain_reconstruct(
                c, r.pivot, next.pivot, r.right_line.direction - 0.5 * omega, omega, Span::Portion, tol, visits);
            pts.insert(pts.end(), part.begin(), part.end());
        }
    }
    return validate_convex(dedupe_cyclic(pts, tol.pos));
}

ReconstructionResult reconstruct_aware(const Cloud& input, Radians omega, const ReconstructOptions& opts) {
    check_omega(omega);
    if (input.is_single_circle()) {
        throw Error(ErrorCode::SingleCircleAmbiguous, "a single circle does not fix the vertices");
    }
    std::optional<Cloud> holder;
    const Cloud& c = as_maximal(input, holder);
    if (c.is_single_circle()) {
        throw Error(ErrorCode::SingleCircleAmbiguous, "the maximal cloud is a single circle");
    }

    std::size_t visits = 0;
    const std::vector<NarrowRecord> s = first_pass(c, omega, opts, &visits);
    std::optional<ConvexPolygon> polygon;
    try {
        polygon.emplace(second_pass(c, omega, s, opts, &visits));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidCloud || e.code() == ErrorCode::OmegaOutOfRange) throw;
        throw Error(ErrorCode::CertificationFailed,
                    std::string("no polygon fits the cloud (") + std::string(to_string(e.code())) + ": " + e.what() +
                        ")");
    }

    const Tolerance cert = certification_tolerance(c, omega, opts);
    CloudDifference diff;
    try {
        diff = compare_clouds(c, maximal_cloud(omega_cloud(*polygon, omega), working_tolerance(c, omega, opts)));
    } catch (const Error& e) {
        throw Error(ErrorCode::CertificationFailed, std::string("cloud of the result is invalid: ") + e.what());
    }
    if (!diff.same_count || diff.max_position_error > cert.pos || diff.max_measure_error > cert.ang) {
        throw Error(ErrorCode::CertificationFailed,
                    "cloud of the result differs from the input (position error " +
                        std::to_string(diff.max_position_error) + ", measure error " +
                        std::to_string(diff.max_measure_error) + ")");
    }
    return ReconstructionResult{*polygon,       omega,    true, visits, s.size() + kFixedState, s.size(),
                                diff.max_position_error};
}

// ---------------------------------------------------------------------------
// Unknown omega
// ---------------------------------------------------------------------------

namespace {

// First point of the cloud hit by the ray from `origin` through `through`,
// strictly beyond `through`.
std::optional<CloudPoint> ray_hit_beyond(const Cloud& c, Point2 origin, Point2 through, const Tolerance& tol) {
    const double reach = distance(origin, through);
    const Point2 e = (1.0 / reach) * (through - origin);
    std::optional<CloudPoint> best;
    double best_s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Arc& a = c.arc(i);
        const Point2 f = origin - a.circle().center;
        const double b = dot(f, e);
        const double disc = b * b - (dot(f, f) - a.circle().radius * a.circle().radius);
        if (disc < 0.0) continue;
        const double root = std::sqrt(disc);
        for (const double s : {-b - root, -b + root}) {
            if (s <= reach + tol.pos || s >= best_s) continue;
            const Point2 p = origin + s * e;
            const Radians off = a.offset_of(p);
            if (off > a.measure()) continue;
            best_s = s;
            best = CloudPoint{i, off, p};
        }
    }
    return best;
}

// omega from a normal pivot: the incident circles meet again at a contact
// vertex x, and the cloud point on ray ux beyond x is one window of turn
// away from u (ahead for a left-arm contact, behind for a right-arm one).
std::optional<Radians> omega_at_normal_pivot(const Cloud& c, std::size_t i, const Tolerance& tol) {
    const Point2 u = c.arc(i).start();
    const std::size_t n = c.size();
    if (circles_meet_at(c, i + 1, u, tol) || circles_meet_at(c, i + n - 1, u, tol)) {
        return std::nullopt;  // narrow
    }
    CircleIntersection x;
    try {
        x = second_circle_intersection(c.arc(i + n - 1).circle(), c.arc(i).circle(), u, tol);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (x.tangent) return std::nullopt;
    const std::optional<CloudPoint> hit = ray_hit_beyond(c, u, x.point, tol);
    if (!hit) return std::nullopt;
    const Radians tau = turn(c, pivot_point(c, i), *hit);
    return tau < kTwoPi ? kPi - 0.5 * tau : 0.5 * (tau - kTwoPi);
}

ReconstructionResult with_visits(ReconstructionResult r, std::size_t extra) {
    r.pivot_visits += extra;
    return r;
}

}  // namespace

ReconstructionResult reconstruct_oblivious(const Cloud& input, const ReconstructOptions& opts) {
    if (input.is_single_circle()) {
        throw Error(ErrorCode::SingleCircleAmbiguous, "a single circle fixes neither omega nor the vertices");
    }
    std::optional<Cloud> holder;
    const Cloud& c = as_maximal(input, holder);
    if (c.is_single_circle()) {
        throw Error(ErrorCode::SingleCircleAmbiguous, "the maximal cloud is a single circle");
    }
    const Tolerance& tol = c.tolerance();
    const std::size_t n = c.size();
    const Radians total = c.total_measure();
    const double total_tol = static_cast<double>(n) * tol.ang;
    if (total > 2.0 * kTwoPi + total_tol) {
        throw Error(ErrorCode::InvalidCloud, "arc measures exceed 4pi");
    }

    // If every pivot is narrow, each arc spans whole windows 2(pi - omega).
    auto all_narrow_omega = [&] {
        Radians shortest = c.arc(0).measure();
        for (const Arc& a : c.arcs()) shortest = std::min(shortest, a.measure());
        return kPi - 0.5 * shortest;
    };

    std::size_t visits = 0;
    if (std::abs(total - 2.0 * kTwoPi) <= total_tol) {
        // No strictly narrow vertex. A vertex with internal angle exactly
        // omega looks like a normal pivot locally, so each candidate is
        // certified before it is accepted.
        std::vector<Radians> candidates;
        for (std::size_t i = 0; i < n && candidates.size() < 2; ++i) {
            ++visits;
            if (const auto w = omega_at_normal_pivot(c, i, tol); w && *w > 0.0 && *w < kPi) {
                candidates.push_back(*w);
            }
        }
        candidates.push_back(all_narrow_omega());
        std::optional<Error> last;
        for (const Radians w : candidates) {
            if (!(w > 0.0 && w < kPi)) continue;
            try {
                return with_visits(reconstruct_aware(c, w, opts), visits);
            } catch (const Error& e) {
                last = e;
            }
        }
        throw Error(ErrorCode::InvalidCloud,
                    std::string("no omega reproduces the cloud") + (last ? std::string(": ") + last->what() : ""));
    }

    // A run of at least two arcs whose circles all pass through the run's
    // opening pivot spans exactly one window. Two-arc clouds have none. The
    // arc closing at the pivot passes through it trivially and never counts.
    std::optional<Radians> omega;
    for (std::size_t i = 0; n > 2 && i < n; ++i) {
        ++visits;
        const Point2 u = c.arc(i).start();
        std::size_t len = 1;
        Radians tau = c.arc(i).measure();
        while (len + 1 < n && circles_meet_at(c, i + len, u, tol)) {
            tau += c.arc(i + len).measure();
            ++len;
        }
        if (len < 2 || len + 1 >= n) continue;
        const Radians w = kPi - 0.5 * tau;
        if (omega && std::abs(*omega - w) > 1e-6) {
            throw Error(ErrorCode::AmbiguousOmega,
                        "runs disagree on omega: " + std::to_string(*omega) + " vs " + std::to_string(w));
        }
        if (!omega) omega = w;
    }
    // A run can be a coincidence (a third circle through a vertex); if its
    // omega does not certify, fall back to the all-narrow reading.
    if (omega && *omega > 0.0 && *omega < 0.5 * kPi) {
        try {
            return with_visits(reconstruct_aware(c, *omega, opts), visits);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CertificationFailed && e.code() != ErrorCode::StrictNarrowEncountered &&
                e.code() != ErrorCode::ContactOffCircle) {
                throw;
            }
        }
    }

    // Every pivot is narrow. With omega below pi/2 this is a segment (two
    // arcs) or an acute triangle whose angles are all below omega.
    const Radians w = all_narrow_omega();
    if (!(w > 0.0 && w < 0.5 * kPi)) {
        throw Error(ErrorCode::AmbiguousOmega,
                    "all-narrow cloud with omega " + std::to_string(w) + " >= pi/2 fits several polygons");
    }
    try {
        return with_visits(reconstruct_aware(c, w, opts), visits);
    } catch (const Error& e) {
        throw Error(ErrorCode::NotASegment, std::string("all pivots are narrow but no polygon fits: ") + e.what());
    }
}

}  // namespace omegacloud
