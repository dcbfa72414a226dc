#pragma once

#include "arrowlab/scenario.hpp"

#include <span>
#include <string>

namespace arrowlab {

/// Renders the entropy scan as a standalone SVG: one polyline per p value
/// over s in [0, 1], fixed 800x560 viewport, labeled axes (s horizontal,
/// Z^b vertical) and a legend. Output is deterministic for a given table.
std::string render_entropy_scan_svg(std::span<const EntropyScanRow> rows);

} // namespace arrowlab
