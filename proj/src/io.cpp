#include "omegacloud/io.hpp"
#include "omegacloud/error.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace omegacloud {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json point_json(Point2 p) { return json::array({p.x, p.y}); }

double number_at(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) parse_error(std::string("expected a number for \"") + key + "\"");
    return j.at(key).get<double>();
}

Point2 point_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        parse_error(std::string("expected [x, y] for ") + what);
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

void check_version(const json& j) {
    if (!j.is_object()) parse_error("expected a JSON object");
    if (!j.contains("format_version") || !j.at("format_version").is_number_integer()) {
        parse_error("missing integer \"format_version\"");
    }
    if (j.at("format_version").get<int>() != kFormatVersion) {
        parse_error("unsupported format_version " + std::to_string(j.at("format_version").get<int>()));
    }
}

}  // namespace

json polygon_to_json(const ConvexPolygon& p) {
    json vertices = json::array();
    for (const Point2& v : p.vertices()) vertices.push_back(point_json(v));
    return json{{"format_version", kFormatVersion}, {"vertices", std::move(vertices)}};
}

json cloud_to_json(const Cloud& c) {
    json arcs = json::array();
    for (const Arc& a : c.arcs()) {
        arcs.push_back(json{{"center", point_json(a.circle().center)},
                            {"radius", a.circle().radius},
                            {"start", point_json(a.start())},
                            {"end", point_json(a.end())},
                            {"measure", a.measure()}});
    }
    json out{{"format_version", kFormatVersion}};
    out["omega"] = c.omega() ? json(*c.omega()) : json(nullptr);
    out["maximal"] = c.maximal();
    out["arcs"] = std::move(arcs);
    return out;
}

ConvexPolygon polygon_from_json(const json& j) {
    check_version(j);
    if (!j.contains("vertices") || !j.at("vertices").is_array()) parse_error("missing \"vertices\" array");
    std::vector<Point2> pts;
    for (const json& v : j.at("vertices")) pts.push_back(point_from(v, "a vertex"));
    return validate_convex(pts);
}

Cloud cloud_from_json(const json& j) {
    check_version(j);
    if (!j.contains("arcs") || !j.at("arcs").is_array()) parse_error("missing \"arcs\" array");
    const json& arcs = j.at("arcs");
    if (arcs.empty()) parse_error("cloud has no arcs");

    std::optional<Radians> omega;
    if (j.contains("omega") && !j.at("omega").is_null()) omega = number_at(j, "omega");
    bool maximal = false;
    if (j.contains("maximal")) {
        if (!j.at("maximal").is_boolean()) parse_error("\"maximal\" must be a boolean");
        maximal = j.at("maximal").get<bool>();
    }

    struct Raw {
        Circle circle;
        Point2 start, end;
        double measure;
    };
    std::vector<Raw> raw;
    std::vector<Point2> ends;
    for (const json& a : arcs) {
        if (!a.is_object()) parse_error("each arc must be an object");
        if (!a.contains("center") || !a.contains("start") || !a.contains("end")) {
            parse_error("arc needs \"center\", \"start\" and \"end\"");
        }
        Raw r{{point_from(a.at("center"), "an arc centre"), number_at(a, "radius")},
              point_from(a.at("start"), "an arc start"),
              point_from(a.at("end"), "an arc end"),
              number_at(a, "measure")};
        ends.push_back(r.start);
        ends.push_back(r.end);
        raw.push_back(r);
    }
    const double scale = raw.size() == 1 ? 2.0 * raw.front().circle.radius : bbox_diameter(ends);
    const Tolerance tol = Tolerance::for_scale(scale);
    std::vector<Arc> built;
    built.reserve(raw.size());
    for (const Raw& r : raw) built.push_back(Arc::make(r.circle, r.start, r.end, r.measure, tol));
    return Cloud::make(std::move(built), omega, maximal, tol);
}

json read_json(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) parse_error("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        parse_error(std::string("invalid JSON in ") + (path.empty() ? "stdin" : path) + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) parse_error("cannot write " + path);
    out << text;
    if (!out) parse_error("failed writing " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Document read_document(const std::string& path) {
    const json j = read_json(path);
    if (j.is_object() && j.contains("arcs")) return cloud_from_json(j);
    if (j.is_object() && j.contains("vertices")) return polygon_from_json(j);
    parse_error(path + " holds neither \"vertices\" nor \"arcs\"");
}

}  // namespace omegacloud
