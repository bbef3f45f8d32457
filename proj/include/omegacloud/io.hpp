#pragma once

#include "omegacloud/cloud.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace omegacloud {

inline constexpr int kFormatVersion = 1;

/// JSON documents for polygons and clouds. Numbers are written in shortest
/// round-trip form, so save then load reproduces every double exactly.
nlohmann::json polygon_to_json(const ConvexPolygon& p);
nlohmann::json cloud_to_json(const Cloud& c);

/// Throws ParseError on schema problems, the geometric error codes
/// (NotConvex, InvalidArc, NonClosingCloud, ...) on inconsistent content.
ConvexPolygon polygon_from_json(const nlohmann::json& j);
Cloud cloud_from_json(const nlohmann::json& j);

/// Whole-file helpers. An empty path or "-" means stdin / stdout.
nlohmann::json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);
std::string dump(const nlohmann::json& j);

using Document = std::variant<ConvexPolygon, Cloud>;

/// A file holding either kind, told apart by its "vertices" or "arcs" key.
Document read_document(const std::string& path);

}  // namespace omegacloud
