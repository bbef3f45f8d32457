#include "omegacloud/cloud.hpp"
#include "omegacloud/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace omegacloud {

Tolerance Cloud::tolerance_for(const std::vector<Arc>& arcs) {
    if (arcs.size() == 1) return Tolerance::for_scale(2.0 * arcs.front().circle().radius);
    std::vector<Point2> pts;
    pts.reserve(2 * arcs.size());
    for (const Arc& a : arcs) {
        pts.push_back(a.start());
        pts.push_back(a.end());
    }
    return Tolerance::for_scale(bbox_diameter(pts));
}

Cloud Cloud::make(std::vector<Arc> arcs, std::optional<Radians> omega, bool maximal,
                  const Tolerance& tol, std::vector<PivotKind> kinds) {
    if (arcs.empty()) throw Error(ErrorCode::InvalidCloud, "a cloud needs at least one arc");
    if (omega && !(*omega > 0.0 && *omega < kPi)) {
        throw Error(ErrorCode::OmegaOutOfRange, "omega must lie in (0, pi)");
    }
    Cloud c;
    c.omega_ = omega;
    c.maximal_ = maximal;
    c.tol_ = tol;
    const std::size_t n = arcs.size();
    if (n == 1) {
        if (!arcs.front().is_full_circle()) {
            throw Error(ErrorCode::NonClosingCloud, "a single arc must be a full circle");
        }
        c.diameter_ = 2.0 * arcs.front().circle().radius;
    } else {
        std::vector<Point2> pts;
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (arcs[i].is_full_circle()) {
                throw Error(ErrorCode::InvalidCloud, "a full circle cannot be part of a chain");
            }
            if (distance(arcs[i].end(), arcs[(i + 1) % n].start()) > tol.pos) {
                throw Error(ErrorCode::NonClosingCloud,
                            "arc " + std::to_string(i) + " does not end where arc " +
                                std::to_string((i + 1) % n) + " starts");
            }
            pts.push_back(arcs[i].start());
        }
        c.diameter_ = bbox_diameter(pts);
        if (!kinds.empty() && kinds.size() != n) {
            throw Error(ErrorCode::InvalidCloud, "pivot annotation does not match the arc count");
        }
        c.pivots_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            PivotKind kind = kinds.empty() ? PivotKind::Plain : kinds[i];
            if (same_circle(arcs[(i + n - 1) % n].circle(), arcs[i].circle(), tol)) {
                if (maximal) {
                    throw Error(ErrorCode::InvalidCloud,
                                "maximal cloud has co-circular arcs at pivot " + std::to_string(i));
                }
                kind = PivotKind::Hidden;
            }
            c.pivots_.push_back(Pivot{arcs[i].start(), kind, i});
        }
    }
    for (const Arc& a : arcs) c.total_ += a.measure();
    c.arcs_ = std::move(arcs);
    return c;
}

CloudPoint pivot_point(const Cloud& c, std::size_t pivot) {
    const std::size_t i = pivot % c.size();
    return CloudPoint{i, 0.0, c.arc(i).start()};
}

CloudPoint cloud_point(const Cloud& c, std::size_t arc, Radians offset) {
    const Arc& a = c.arc(arc);
    if (offset < 0.0 || offset > a.measure()) {
        throw Error(ErrorCode::TurnOutOfRange, "offset outside the arc");
    }
    if (offset == a.measure() && !a.is_full_circle()) return pivot_point(c, c.next(arc));
    return CloudPoint{arc % c.size(), offset, a.point_at(offset)};
}

CloudPoint locate(const Cloud& c, Point2 p) {
    const Tolerance& tol = c.tolerance();
    std::size_t best = c.size();
    double best_err = std::numeric_limits<double>::infinity();
    Radians best_offset = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Arc& a = c.arc(i);
        const double err = std::abs(distance(a.circle().center, p) - a.circle().radius);
        if (err > tol.pos || err >= best_err) continue;
        Radians off = a.offset_of(p);
        if (off > a.measure()) {
            // Within tolerance of the start counts as the start.
            if (distance(p, a.start()) <= tol.pos) {
                off = 0.0;
            } else if (distance(p, a.end()) <= tol.pos) {
                off = a.measure();
            } else {
                continue;
            }
        }
        best = i;
        best_err = err;
        best_offset = off;
    }
    if (best == c.size()) throw Error(ErrorCode::InvalidArc, "point is not on the cloud");
    return cloud_point(c, best, best_offset);
}

namespace {

CloudPoint normalized(const Cloud& c, CloudPoint p) {
    const Arc& a = c.arc(p.arc);
    if (!a.is_full_circle() && p.offset >= a.measure()) return pivot_point(c, c.next(p.arc));
    return p;
}

}  // namespace

Radians turn(const Cloud& c, const CloudPoint& s_in, const CloudPoint& t_in) {
    const CloudPoint s = normalized(c, s_in);
    const CloudPoint t = normalized(c, t_in);
    if (s.arc == t.arc && t.offset >= s.offset) return t.offset - s.offset;
    if (c.is_single_circle()) return c.total_measure() - (s.offset - t.offset);
    Radians sum = c.arc(s.arc).measure() - s.offset;
    for (std::size_t i = c.next(s.arc); i != t.arc; i = c.next(i)) sum += c.arc(i).measure();
    return sum + t.offset;
}

CloudPoint point_at_turn(const Cloud& c, const CloudPoint& s, Radians tau) {
    const Tolerance& tol = c.tolerance();
    if (tau < -tol.ang || tau > c.total_measure() + tol.ang) {
        throw Error(ErrorCode::TurnOutOfRange, "turn outside [0, total measure]");
    }
    CloudCursor cursor(c, normalized(c, s));
    cursor.advance(std::clamp(tau, 0.0, c.total_measure()));
    const Arc& a = c.arc(cursor.arc());
    if (cursor.offset() <= tol.ang) return pivot_point(c, cursor.arc());
    if (!a.is_full_circle() && a.measure() - cursor.offset() <= tol.ang) {
        return pivot_point(c, c.next(cursor.arc()));
    }
    return cursor.point();
}

CloudCursor::CloudCursor(const Cloud& c, const CloudPoint& at, std::size_t* crossings)
    : cloud_(&c), arc_(at.arc % c.size()), offset_(at.offset), crossings_(crossings) {}

void CloudCursor::step_to_next_arc() {
    arc_ = cloud_->next(arc_);
    offset_ = 0.0;
    if (crossings_ != nullptr) ++*crossings_;
}

void CloudCursor::advance(Radians tau) {
    const double snap = cloud_->tolerance().snap;
    travelled_ += tau;
    Radians remaining = tau;
    while (remaining > 0.0) {
        const Radians room = cloud_->arc(arc_).measure() - offset_;
        if (remaining < room - snap) {
            offset_ += remaining;
            return;
        }
        remaining -= room;
        step_to_next_arc();
        if (remaining <= snap) return;
    }
}

Radians CloudCursor::advance_to_pivot() {
    const Radians room = cloud_->arc(arc_).measure() - offset_;
    travelled_ += room;
    step_to_next_arc();
    return room;
}

CloudPoint CloudCursor::point() const {
    return CloudPoint{arc_, offset_, cloud_->arc(arc_).point_at(offset_)};
}

// ---------------------------------------------------------------------------
// Forward construction
// ---------------------------------------------------------------------------

namespace {

// Direction intervals narrower than this produce no arc. They only arise
// when two contact changes coincide up to round-off.
constexpr double kDropWidth = 1e-13;

struct Interval {
    double d0;
    double d1;
    std::size_t left;
    std::size_t right;
};

struct Event {
    double at;
    std::size_t vertex;
};

struct Piece {
    Interval iv;
    std::optional<std::size_t> stationary_before;
};

std::size_t support_vertex(std::span<const Point2> v, Radians normal, double scale) {
    const Point2 n = unit(normal);
    std::size_t best = 0;
    double best_val = dot(v[0], n);
    for (std::size_t j = 1; j < v.size(); ++j) {
        const double val = dot(v[j], n);
        if (val > best_val) {
            best = j;
            best_val = val;
        }
    }
    // Ties go to the clockwise-later vertex.
    const std::size_t later = (best + 1) % v.size();
    if (dot(v[later], n) >= best_val - 1e-15 * scale) best = later;
    return best;
}

}  // namespace

Cloud omega_cloud(const ConvexPolygon& p, Radians omega) {
    if (!(omega > 0.0 && omega < kPi)) {
        throw Error(ErrorCode::OmegaOutOfRange, "omega must lie in (0, pi)");
    }
    const std::size_t n = p.size();
    const auto v = p.vertices();
    const double scale = p.diameter();
    const Tolerance tol = Tolerance::for_scale(scale);

    // Outward normal of edge i (v[i] -> v[i+1]) and the width of each
    // vertex's normal cone (pi minus the internal angle).
    std::vector<Radians> normal(n), cone(n), theta(n);
    for (std::size_t i = 0; i < n; ++i) normal[i] = direction_of(v[(i + 1) % n] - v[i]) + 0.5 * kPi;
    for (std::size_t i = 0; i < n; ++i) {
        cone[i] = n == 2 ? kPi : normalize_angle(normal[(i + n - 1) % n] - normal[i]);
        theta[i] = n == 2 ? 0.0 : internal_angle(p, i);
    }

    // Sweep the wedge direction d from 0 down to -2pi, i.e. decrease by
    // delta in [0, 2pi). The left arm's outward normal is d + omega/2 + pi/2,
    // the right arm's is d - omega/2 - pi/2; each contact advances one
    // vertex clockwise whenever its normal leaves the current cone.
    auto events_for = [&](Radians phi0, std::size_t& first) {
        std::size_t i = support_vertex(v, phi0, scale);
        first = i;
        std::vector<Event> ev;
        ev.reserve(n + 1);
        double delta = normalize_angle(phi0 - normal[i]);
        while (delta < kTwoPi) {
            i = (i + 1) % n;
            ev.push_back({delta, i});
            delta += cone[i];
        }
        return ev;
    };
    std::size_t left = 0, right = 0;
    const std::vector<Event> left_ev = events_for(0.5 * omega + 0.5 * kPi, left);
    const std::vector<Event> right_ev = events_for(-0.5 * omega - 0.5 * kPi, right);

    std::vector<Interval> intervals;
    intervals.reserve(2 * n + 2);
    double at = 0.0;
    std::size_t il = 0, ir = 0;
    while (true) {
        const double nl = il < left_ev.size() ? left_ev[il].at : kTwoPi;
        const double nr = ir < right_ev.size() ? right_ev[ir].at : kTwoPi;
        const double next = std::min({nl, nr, kTwoPi});
        intervals.push_back({at, next, left, right});
        if (next >= kTwoPi) break;
        if (nl <= nr) {
            left = left_ev[il++].vertex;
        } else {
            right = right_ev[ir++].vertex;
        }
        at = next;
    }
    // The interval holding direction 0 is split across the sweep's ends.
    if (intervals.size() > 1 && intervals.front().left == intervals.back().left &&
        intervals.front().right == intervals.back().right) {
        intervals.front().d0 = intervals.back().d0 - kTwoPi;
        intervals.pop_back();
    }

    std::vector<Piece> pieces;
    std::optional<std::size_t> pending;
    for (const Interval& iv : intervals) {
        if (iv.left == iv.right) {
            pending = iv.left;
        } else if (iv.d1 - iv.d0 > kDropWidth) {
            pieces.push_back({iv, pending});
            pending.reset();
        }
    }
    if (pieces.size() < 2) throw Error(ErrorCode::DegeneratePolygon, "polygon yields fewer than two arcs");
    if (pending && !pieces.front().stationary_before) pieces.front().stationary_before = pending;

    auto apex = [&](const Interval& iv, double delta) {
        const Radians d = -delta;
        return intersect_lines(v[iv.left], d + 0.5 * omega, v[iv.right], d - 0.5 * omega);
    };

    const std::size_t m = pieces.size();
    std::vector<Point2> pivot_at(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Piece& prev = pieces[(i + m - 1) % m];
        pivot_at[i] = pieces[i].stationary_before ? v[*pieces[i].stationary_before]
                                                  : apex(prev.iv, prev.iv.d1);
    }

    std::vector<Arc> arcs;
    arcs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Interval& iv = pieces[i].iv;
        const Circle circle = inscribed_circle(v[iv.left], v[iv.right], omega, Side::Right, tol);
        arcs.push_back(Arc::make(circle, pivot_at[i], pivot_at[(i + 1) % m], 2.0 * (iv.d1 - iv.d0), tol));
    }

    std::vector<PivotKind> kinds(m, PivotKind::Plain);
    for (std::size_t i = 0; i < m; ++i) {
        std::optional<std::size_t> vertex = pieces[i].stationary_before;
        if (!vertex) {
            const Interval& a = pieces[(i + m - 1) % m].iv;
            const Interval& b = pieces[i].iv;
            for (std::size_t cand : {a.left, a.right, b.left, b.right}) {
                if (distance(v[cand], pivot_at[i]) <= tol.pos) vertex = cand;
            }
        }
        if (vertex) {
            kinds[i] = theta[*vertex] < omega - tol.ang ? PivotKind::StrictlyNarrow : PivotKind::Narrow;
        }
    }
    return Cloud::make(std::move(arcs), omega, false, tol, std::move(kinds));
}

Cloud maximal_cloud(const Cloud& c) { return maximal_cloud(c, c.tolerance()); }

Cloud maximal_cloud(const Cloud& c, const Tolerance& tol) {
    const std::size_t n = c.size();
    if (n == 1) return Cloud::make(c.arcs(), c.omega(), true, tol);

    std::vector<bool> joins(n);
    std::size_t first_break = n;
    for (std::size_t i = 0; i < n; ++i) {
        joins[i] = same_circle(c.arc(c.prev(i)).circle(), c.arc(i).circle(), tol);
        if (!joins[i] && first_break == n) first_break = i;
    }
    if (first_break == n) {
        std::vector<Arc> one{Arc::full_circle(c.arc(0).circle(), c.arc(0).start(), tol)};
        return Cloud::make(std::move(one), c.omega(), true, tol);
    }

    struct Group {
        std::size_t first;
        std::size_t count;
        Radians measure;
    };
    std::vector<Group> groups;
    std::size_t holder = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = (first_break + k) % n;
        if (!joins[i]) groups.push_back({i, 0, 0.0});
        groups.back().count += 1;
        groups.back().measure += c.arc(i).measure();
        if (i == 0) holder = groups.size() - 1;
    }

    std::vector<Arc> arcs;
    std::vector<PivotKind> kinds;
    arcs.reserve(groups.size());
    kinds.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const Group& grp = groups[(holder + g) % groups.size()];
        const Arc& head = c.arc(grp.first);
        const Arc& tail = c.arc(grp.first + grp.count - 1);
        if (grp.count == 1) {
            arcs.push_back(head);
            kinds.push_back(c.pivots()[grp.first].kind);
            continue;
        }
        arcs.push_back(Arc::make(head.circle(), head.start(), tail.end(), grp.measure, tol));
        kinds.push_back(c.pivots()[grp.first].kind);
    }
    return Cloud::make(std::move(arcs), c.omega(), true, tol, std::move(kinds));
}

MeasureReport total_measure_check(const Cloud& c, const ConvexPolygon& p, Radians omega) {
    MeasureReport report;
    report.actual = c.total_measure();
    const Tolerance tol = Tolerance::for_scale(p.diameter());
    Radians deficit_sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Radians theta = p.is_segment() ? 0.0 : internal_angle(p, i);
        if (theta <= omega + tol.ang) {
            report.deficits.push_back({i, omega - theta});
            deficit_sum += omega - theta;
        }
    }
    report.expected = 2.0 * (kTwoPi - deficit_sum);
    const double bound = static_cast<double>(std::max<std::size_t>(1, p.size())) * tol.ang;
    if (std::abs(report.actual - report.expected) > bound) {
        throw Error(ErrorCode::IdentityViolated,
                    "arc measures sum to " + std::to_string(report.actual) + ", expected " +
                        std::to_string(report.expected));
    }
    return report;
}

CloudDifference compare_clouds(const Cloud& a, const Cloud& b) {
    CloudDifference diff;
    diff.same_count = a.size() == b.size();
    if (!diff.same_count) {
        diff.max_position_error = std::numeric_limits<double>::infinity();
        diff.max_measure_error = std::numeric_limits<double>::infinity();
        return diff;
    }
    const std::size_t n = a.size();
    std::size_t shift = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double d = distance(a.arc(0).start(), b.arc(k).start());
        if (d < best) {
            best = d;
            shift = k;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Arc& x = a.arc(i);
        const Arc& y = b.arc(i + shift);
        double err = distance(x.circle().center, y.circle().center);
        err = std::max(err, std::abs(x.circle().radius - y.circle().radius));
        if (n > 1) {
            err = std::max({err, distance(x.start(), y.start()), distance(x.end(), y.end())});
        }
        diff.max_position_error = std::max(diff.max_position_error, err);
        diff.max_measure_error = std::max(diff.max_measure_error, std::abs(x.measure() - y.measure()));
    }
    return diff;
}

double distance_to_cloud(const Cloud& c, Point2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Arc& a : c.arcs()) {
        double d;
        if (a.is_full_circle() || a.offset_of(p) <= a.measure()) {
            d = std::abs(distance(a.circle().center, p) - a.circle().radius);
        } else {
            d = std::min(distance(p, a.start()), distance(p, a.end()));
        }
        best = std::min(best, d);
    }
    return best;
}

}  // namespace omegacloud
