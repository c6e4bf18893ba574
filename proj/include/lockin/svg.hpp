#pragma once

#include "lockin/maps.hpp"

#include <string>

namespace lockin {

// Self-contained SVG heatmap of one map channel: one <rect> per cell,
// grayscale from channel min (white) to max (black), axis labels and tick
// marks, NaN cells filled with an inline diagonal-hatch pattern. No
// external assets. Throws argument_error if the channel does not exist.
std::string heatmap_svg(const TongueMap& map, const std::string& channel);

void render_heatmap_svg(const TongueMap& map, const std::string& channel,
                        const std::string& path);

} // namespace lockin
