#pragma once

#include <iosfwd>
#include <span>

#include "rpng/estimators.hpp"
#include "rpng/height.hpp"
#include "rpng/level_lines.hpp"

namespace rpng {

// Staircase rendering of one or more height profiles over the window.
void render_profile_svg(std::ostream& out, std::span<const HeightProfile> profiles,
                        std::int32_t view_half_width = 0);

// Phase diagram: measured speeds with error bars against lambda0, with
// the expected kinked line lambda + max(lambda0 - 1, 0) overlaid.
void render_phase_svg(std::ostream& out, const PhaseScan& scan);

// Space-time diagram, time upward. Loops are drawn thin, horizon-open
// curves heavier, and the flagged unbounded candidates bold.
void render_level_lines_svg(std::ostream& out, const LevelLineSet& set,
                            std::int32_t view_half_width = 0);

} // namespace rpng
