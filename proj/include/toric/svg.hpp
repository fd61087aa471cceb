#pragma once

#include <string>
#include <vector>

#include "toric/polyhedral.hpp"

namespace toric {

// SVG picture of a fan in Z^2 with numbered dots at the given points (may be empty).
// Throws UnsupportedRank for other ambient ranks.
std::string render_fan_svg(const Fan& fan, const std::vector<Vec>& dots = {});

}  // namespace toric
