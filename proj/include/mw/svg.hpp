// SVG rendering of the k = 2 window picture: zonotope, window points,
// jumping loci with hair ticks, vertex cones. Rendering only; all geometry
// stays exact upstream.

#pragma once

#include <string>

#include "mw/window.hpp"

namespace mw {

std::string ss_svg(const WindowContext& ctx, const SSRecord& rec, const Rat& view_radius);

}  // namespace mw
