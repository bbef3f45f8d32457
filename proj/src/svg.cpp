#include "omegacloud/svg.hpp"
#include "omegacloud/error.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace omegacloud {

namespace {

struct Box {
    double lo_x = std::numeric_limits<double>::infinity();
    double lo_y = lo_x;
    double hi_x = -lo_x;
    double hi_y = -lo_x;

    void add(Point2 p) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
    }
    void add(const Circle& c) {
        add(c.center + Point2{-c.radius, -c.radius});
        add(c.center + Point2{c.radius, c.radius});
    }
};

// Fixed-precision numbers keep the bytes stable across platforms.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

// SVG's y axis points down; flip so the figure reads like the usual plots.
std::string xy(Point2 p) { return num(p.x) + " " + num(-p.y); }

std::string arc_path(const Arc& a) {
    const std::string r = num(a.circle().radius);
    if (a.is_full_circle()) {
        const Point2 far = a.point_at(kPi);
        return "M " + xy(a.start()) + " A " + r + " " + r + " 0 1 0 " + xy(far) + " A " + r + " " + r + " 0 1 0 " +
               xy(a.start());
    }
    // Clockwise in the plane is counterclockwise on screen: sweep flag 0.
    const char* large = a.measure() > kPi ? "1" : "0";
    return "M " + xy(a.start()) + " A " + r + " " + r + " 0 " + large + " 0 " + xy(a.end());
}

}  // namespace

std::string render_svg(const Figure& fig) {
    if (fig.polygons.empty() && fig.clouds.empty()) throw Error(ErrorCode::ParseError, "nothing to render");
    Box box;
    for (const ConvexPolygon& p : fig.polygons) {
        for (const Point2& v : p.vertices()) box.add(v);
    }
    for (const Cloud& c : fig.clouds) {
        for (const Arc& a : c.arcs()) box.add(a.circle());
    }
    const double span = std::max({box.hi_x - box.lo_x, box.hi_y - box.lo_y, 1e-9});
    const double pad = 0.05 * span;
    const double unit = span / 400.0;  // one "pixel" of a 400-wide figure

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(box.lo_x - pad) << " "
        << num(-box.hi_y - pad) << " " << num(box.hi_x - box.lo_x + 2 * pad) << " "
        << num(box.hi_y - box.lo_y + 2 * pad) << "\" width=\"480\" height=\""
        << num(480.0 * (box.hi_y - box.lo_y + 2 * pad) / (box.hi_x - box.lo_x + 2 * pad)) << "\">\n";

    for (const ConvexPolygon& p : fig.polygons) {
        out << "  <path class=\"polygon\" fill=\"#d9e2ef\" stroke=\"#34495e\" stroke-width=\"" << num(unit)
            << "\" d=\"M";
        for (std::size_t i = 0; i < p.size(); ++i) out << (i == 0 ? " " : " L ") << xy(p[i]);
        out << " Z\"/>\n";
    }
    for (const Cloud& c : fig.clouds) {
        // Merged arcs share a circle; draw each supporting circle once.
        std::vector<Circle> drawn;
        for (const Arc& a : c.arcs()) {
            const bool seen = std::any_of(drawn.begin(), drawn.end(),
                                          [&](const Circle& k) { return same_circle(k, a.circle(), c.tolerance()); });
            if (seen) continue;
            drawn.push_back(a.circle());
            out << "  <circle class=\"support\" cx=\"" << num(a.circle().center.x) << "\" cy=\""
                << num(-a.circle().center.y) << "\" r=\"" << num(a.circle().radius)
                << "\" fill=\"none\" stroke=\"#95a5a6\" stroke-width=\"" << num(0.5 * unit) << "\"/>\n";
        }
        for (const Arc& a : c.arcs()) {
            out << "  <path class=\"arc\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"" << num(3 * unit)
                << "\" d=\"" << arc_path(a) << "\"/>\n";
        }
        for (const Pivot& p : c.pivots()) {
            out << "  <circle class=\"pivot\" cx=\"" << num(p.location.x) << "\" cy=\"" << num(-p.location.y)
                << "\" r=\"" << num(4 * unit) << "\" fill=\"#2c3e50\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace omegacloud
