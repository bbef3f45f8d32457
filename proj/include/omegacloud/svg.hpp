#pragma once

#include "omegacloud/cloud.hpp"

#include <string>
#include <vector>

namespace omegacloud {

/// Figure in the usual style: polygons filled, cloud arcs bold, pivots as
/// disks, supporting circles thin. Output depends only on the inputs.
struct Figure {
    std::vector<ConvexPolygon> polygons;
    std::vector<Cloud> clouds;
};

/// Throws ParseError for a figure with nothing to draw.
[[nodiscard]] std::string render_svg(const Figure& fig);

}  // namespace omegacloud
