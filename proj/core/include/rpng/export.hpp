#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "rpng/engine.hpp"
#include "rpng/estimators.hpp"
#include "rpng/halfline.hpp"
#include "rpng/height.hpp"
#include "rpng/lattice.hpp"
#include "rpng/level_lines.hpp"

namespace rpng {

std::string species_name(Species s);

struct CoupledTraceRow {
    double time;
    std::int32_t edge;
    std::int32_t h;
    std::int32_t h_prime;
    std::int32_t h_tilde;
};

struct VirtualFieldRow {
    double time;
    std::int32_t site;
    std::int32_t n_tilde;
    Species species;
};

struct DeltaRow {
    double time;
    std::int64_t delta;
};

// CSV writers. Each emits a header row; doubles keep full precision.
void write_trajectory_csv(std::ostream& out, std::span<const Trajectory> replicas);
void write_occupancy_csv(std::ostream& out, double time, const LatticeState& state);
void write_profile_csv(std::ostream& out, const HeightProfile& profile);
void write_coupled_csv(std::ostream& out, std::span<const CoupledTraceRow> rows);
void write_virtual_field_csv(std::ostream& out, std::span<const VirtualFieldRow> rows);
void write_delta_csv(std::ostream& out, std::span<const DeltaRow> rows);
void write_phase_csv(std::ostream& out, const PhaseScan& scan);
void write_halfline_csv(std::ostream& out, std::span<const HalfLineResult> replicas);
void write_exclusion_csv(std::ostream& out, std::span<const ExclusionResult> replicas);
void write_first_layer_csv(std::ostream& out, const FirstLayerTrace& trace);

// Level-line polylines as JSON: layer, closed flag, vertex list.
void write_level_lines_json(std::ostream& out, const LevelLineSet& set);

} // namespace rpng
