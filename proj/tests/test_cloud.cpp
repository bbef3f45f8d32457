#include "fixtures.hpp"
#include "omegacloud/cloud.hpp"
#include "omegacloud/error.hpp"
#include "omegacloud/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace omegacloud;

namespace {

std::size_t count_kind(const Cloud& c, PivotKind k) {
    return static_cast<std::size_t>(
        std::count_if(c.pivots().begin(), c.pivots().end(), [k](const Pivot& p) { return p.kind == k; }));
}

bool is_narrow(PivotKind k) { return k == PivotKind::Narrow || k == PivotKind::StrictlyNarrow; }

}  // namespace

TEST_CASE("cloud of the equilateral triangle at pi/2") {
    const ConvexPolygon t = validate_convex(fixtures::triangle());
    const Cloud c = omega_cloud(t, kPi / 2);
    REQUIRE(c.size() == 3);
    for (const Arc& a : c.arcs()) {
        CHECK(a.measure() == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(a.circle().radius == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(count_kind(c, PivotKind::StrictlyNarrow) == 3);
    CHECK(c.total_measure() == doctest::Approx(3 * kPi).epsilon(1e-12));
    for (const Pivot& p : c.pivots()) {
        const bool at_vertex = std::any_of(t.vertices().begin(), t.vertices().end(),
                                           [&](const Point2& v) { return distance(v, p.location) < 1e-12; });
        CHECK(at_vertex);
    }
    for (const Point2& a : sampled_cloud(t, kPi / 2, 10000)) CHECK(distance_to_cloud(c, a) < 1e-7);
}

TEST_CASE("cloud of the square at pi/2") {
    const ConvexPolygon s = validate_convex(fixtures::unit_square());
    const Cloud c = omega_cloud(s, kPi / 2);
    REQUIRE(c.size() == 4);
    for (const Arc& a : c.arcs()) CHECK(a.measure() == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(count_kind(c, PivotKind::Narrow) == 4);
    CHECK(count_kind(c, PivotKind::StrictlyNarrow) == 0);
    CHECK(c.total_measure() == doctest::Approx(4 * kPi).epsilon(1e-12));
}

TEST_CASE("regular hexagon at 5pi/6 is one circle") {
    const ConvexPolygon h = validate_convex(fixtures::regular(6));
    const Cloud c = omega_cloud(h, 5 * kPi / 6);
    REQUIRE(c.size() == 6);
    for (const Arc& a : c.arcs()) {
        CHECK(a.measure() == doctest::Approx(kPi / 3).epsilon(1e-12));
        CHECK(distance(a.circle().center, {0, 0}) < 1e-9);
        CHECK(a.circle().radius == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(count_kind(c, PivotKind::Hidden) == 6);

    const Cloud m = maximal_cloud(c);
    REQUIRE(m.size() == 1);
    CHECK(m.maximal());
    CHECK(m.arc(0).is_full_circle());
    CHECK(m.pivots().empty());
}

TEST_CASE("maximal cloud merges only co-circular neighbours") {
    const ConvexPolygon p = random_convex_polygon(9, 21);
    const Cloud c = omega_cloud(p, 1.0);
    const Cloud m = maximal_cloud(c);
    CHECK(m.maximal());
    CHECK_FALSE(c.maximal());
    CHECK(m.size() == c.size());
    const CloudDifference d = compare_clouds(c, m);
    CHECK(d.same_count);
    CHECK(d.max_position_error == 0.0);

    // Two arcs of pi/3 on one circle merge into one arc of 2pi/3.
    const Tolerance tol = Tolerance::for_scale(2.0);
    const Circle unitc{{0, 0}, 1};
    const Point2 a = unit(kPi / 2), b = unit(kPi / 6), e = unit(-kPi / 6), f = unit(-5 * kPi / 6);
    std::vector<Arc> arcs{Arc::make(unitc, a, b, kPi / 3, tol), Arc::make(unitc, b, e, kPi / 3, tol),
                          Arc::make(Circle{{0, 0}, 1}, e, f, 2 * kPi / 3, tol)};
    // Close the loop with an arc on another circle from f back to a.
    const Circle other = inscribed_circle(f, a, 1.0, Side::Left, tol);
    arcs.push_back(Arc::make(other, f, a, clockwise_angle(other.center, f, a), tol));
    const Cloud raw = Cloud::make(arcs, std::nullopt, false, tol);
    const Cloud merged = maximal_cloud(raw);
    REQUIRE(merged.size() == 2);
    CHECK(merged.arc(0).measure() == doctest::Approx(4 * kPi / 3));
}

TEST_CASE("turns and points at turns") {
    const Cloud c = omega_cloud(validate_convex(fixtures::triangle()), kPi / 2);
    const CloudPoint p0 = pivot_point(c, 0), p1 = pivot_point(c, 1);
    CHECK(turn(c, p0, p0) == 0.0);
    CHECK(turn(c, p0, p1) == doctest::Approx(kPi));
    CHECK(turn(c, p1, p0) == doctest::Approx(2 * kPi));

    const CloudPoint z = point_at_turn(c, p0, 0.0);
    CHECK(distance(z.point, p0.point) < 1e-15);
    const CloudPoint n = point_at_turn(c, p0, kPi);
    CHECK(distance(n.point, p1.point) < 1e-12);
    const CloudPoint loop = point_at_turn(c, p0, c.total_measure());
    CHECK(distance(loop.point, p0.point) < 1e-12);
    CHECK_THROWS_AS((void)point_at_turn(c, p0, c.total_measure() + 1.0), Error);

    const CloudPoint mid = point_at_turn(c, p0, 0.5 * kPi);
    CHECK(turn(c, p0, mid) == doctest::Approx(0.5 * kPi));
    CHECK(distance(locate(c, mid.point).point, mid.point) < 1e-12);
    CHECK_THROWS_AS((void)locate(c, {10, 10}), Error);
}

TEST_CASE("total measure identity") {
    const ConvexPolygon s = validate_convex(fixtures::unit_square());
    const MeasureReport sq = total_measure_check(omega_cloud(s, kPi / 2), s, kPi / 2);
    CHECK(sq.expected == doctest::Approx(4 * kPi));
    double deficit = 0;
    for (const auto& d : sq.deficits) deficit += d.deficit;
    CHECK(std::abs(deficit) < 1e-12);

    const ConvexPolygon t = validate_convex(fixtures::triangle());
    const MeasureReport tr = total_measure_check(omega_cloud(t, kPi / 2), t, kPi / 2);
    CHECK(tr.actual == doctest::Approx(3 * kPi));
    REQUIRE(tr.deficits.size() == 3);
    for (const auto& d : tr.deficits) CHECK(d.deficit == doctest::Approx(kPi / 6));

    const ConvexPolygon h = validate_convex(fixtures::regular(7));
    const MeasureReport wide = total_measure_check(omega_cloud(h, 1.0), h, 1.0);
    CHECK(wide.actual == doctest::Approx(4 * kPi).epsilon(1e-12));
    CHECK(wide.deficits.empty());
}

TEST_CASE("pivot count between n and 2n, arcs at most one window") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const ConvexPolygon p = random_convex_polygon(3 + seed % 20, seed);
        std::mt19937_64 rng(seed);
        const Radians omega = sample_omega(p, rng, 0.1, kPi - 0.1);
        const Cloud c = omega_cloud(p, omega);
        CHECK(c.pivots().size() >= p.size());
        CHECK(c.pivots().size() <= 2 * p.size());
        for (const Arc& a : c.arcs()) CHECK(a.measure() <= 2 * (kPi - omega) + 1e-9);
    }
}

TEST_CASE("narrow pivots sit on vertices") {
    const ConvexPolygon p = random_convex_polygon(6, 8);
    const Cloud c = omega_cloud(p, 2.5);
    std::size_t narrow = 0;
    for (const Pivot& v : c.pivots()) {
        if (!is_narrow(v.kind)) continue;
        ++narrow;
        const bool at_vertex = std::any_of(p.vertices().begin(), p.vertices().end(),
                                           [&](const Point2& q) { return distance(q, v.location) < 1e-9; });
        CHECK(at_vertex);
    }
    CHECK(narrow > 0);
}

TEST_CASE("cloud construction checks closure") {
    const Tolerance tol = Tolerance::for_scale(2.0);
    const Circle c{{0, 0}, 1};
    std::vector<Arc> open{Arc::make(c, unit(kPi / 2), unit(0), kPi / 2, tol)};
    CHECK_THROWS_AS((void)Cloud::make(open, std::nullopt, false, tol), Error);
}

TEST_CASE("hidden pivots have window-long arcs and narrow neighbours") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const ConvexPolygon p = random_convex_polygon(4 + seed % 6, seed);
        const Radians omega = 2.6;
        const Cloud c = omega_cloud(p, omega);
        const Radians window = 2 * (kPi - omega);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.pivots()[i].kind != PivotKind::Hidden) continue;
            CHECK(c.arc(c.prev(i)).measure() == doctest::Approx(window).epsilon(1e-9));
            CHECK(c.arc(i).measure() == doctest::Approx(window).epsilon(1e-9));
            CHECK(c.pivots()[c.prev(i)].kind != PivotKind::Plain);
            CHECK(c.pivots()[c.next(i)].kind != PivotKind::Plain);
        }
    }
    // The regular hexagon at 5pi/6 is all hidden and narrow at once; the
    // five-vertex cut of it has exactly one hidden pivot.
    const Cloud cut = omega_cloud(validate_convex(fixtures::hexagon_pentagon()), 5 * kPi / 6);
    CHECK(count_kind(cut, PivotKind::Hidden) == 1);
}

TEST_CASE("apex moves clockwise along the cloud as the direction turns clockwise") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ConvexPolygon p = random_convex_polygon(4 + seed, seed);
        std::mt19937_64 rng(seed);
        const Radians omega = sample_omega(p, rng, 0.2, kPi - 0.2);
        const Cloud c = omega_cloud(p, omega);
        const auto apices = sampled_cloud(p, omega, 720);
        const CloudPoint origin = locate(c, apices.front());
        Radians last = 0.0;
        for (std::size_t k = 1; k < apices.size(); ++k) {
            Radians t = turn(c, origin, locate(c, apices[k]));
            // Back at a stalled starting pivot: that is the full loop.
            if (t == 0.0 && last > 0.0) t = c.total_measure();
            CHECK(t >= last - 1e-9);
            last = t;
        }
        CHECK(last <= c.total_measure());
    }
}
