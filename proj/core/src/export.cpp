#include "rpng/export.hpp"

#include <limits>
#include <ostream>

#include <json.hpp>

namespace rpng {

namespace {

struct PrecisionGuard {
    explicit PrecisionGuard(std::ostream& out) : out_(out), old_(out.precision()) {
        out_.precision(std::numeric_limits<double>::max_digits10);
    }
    ~PrecisionGuard() { out_.precision(old_); }
    std::ostream& out_;
    std::streamsize old_;
};

} // namespace

std::string species_name(Species s) {
    switch (s) {
    case Species::left: return "l";
    case Species::right: return "r";
    default: return "none";
    }
}

void write_trajectory_csv(std::ostream& out, std::span<const Trajectory> replicas) {
    PrecisionGuard guard(out);
    out << "replica,time,h_e0,phi_l,phi_r,nuc_e0,boundary_touched\n";
    for (std::size_t r = 0; r < replicas.size(); ++r) {
        for (const auto& s : replicas[r].samples) {
            out << r << ',' << s.time << ',' << s.height_origin << ',' << s.flow_left << ','
                << s.flow_right << ',' << s.origin_nucleations << ','
                << (s.boundary_touched ? 1 : 0) << '\n';
        }
    }
}

void write_occupancy_csv(std::ostream& out, double time, const LatticeState& state) {
    PrecisionGuard guard(out);
    out << "time,x,count,species\n";
    const std::int32_t L = state.half_width();
    for (std::int32_t x = -L; x <= L; ++x) {
        const SiteOccupancy occ = state.occupancy(x);
        if (occ.count == 0) continue;
        out << time << ',' << x << ',' << occ.count << ',' << species_name(occ.species)
            << '\n';
    }
}

void write_profile_csv(std::ostream& out, const HeightProfile& profile) {
    PrecisionGuard guard(out);
    out << "time,edge,height\n";
    for (std::int32_t e = -profile.half_width; e < profile.half_width; ++e)
        out << profile.time << ',' << e << ',' << profile.at(e) << '\n';
}

void write_coupled_csv(std::ostream& out, std::span<const CoupledTraceRow> rows) {
    PrecisionGuard guard(out);
    out << "time,edge,h,h_prime,h_tilde\n";
    for (const auto& r : rows)
        out << r.time << ',' << r.edge << ',' << r.h << ',' << r.h_prime << ','
            << r.h_tilde << '\n';
}

void write_virtual_field_csv(std::ostream& out, std::span<const VirtualFieldRow> rows) {
    PrecisionGuard guard(out);
    out << "time,x,n_tilde,species\n";
    for (const auto& r : rows)
        out << r.time << ',' << r.site << ',' << r.n_tilde << ','
            << species_name(r.species) << '\n';
}

void write_delta_csv(std::ostream& out, std::span<const DeltaRow> rows) {
    PrecisionGuard guard(out);
    out << "time,delta\n";
    for (const auto& r : rows) out << r.time << ',' << r.delta << '\n';
}

void write_phase_csv(std::ostream& out, const PhaseScan& scan) {
    PrecisionGuard guard(out);
    out << "lambda0,v_hat_e0,stderr_e0,v_hat_ref,stderr_ref,replicas,T\n";
    for (const auto& p : scan.points)
        out << p.lambda0 << ',' << p.origin.v_hat << ',' << p.origin.stderr_ << ','
            << p.ref.v_hat << ',' << p.ref.stderr_ << ',' << scan.replicas << ','
            << scan.horizon << '\n';
}

void write_halfline_csv(std::ostream& out, std::span<const HalfLineResult> replicas) {
    PrecisionGuard guard(out);
    out << "replica,time,n_t\n";
    for (std::size_t r = 0; r < replicas.size(); ++r)
        for (std::size_t i = 0; i < replicas[r].times.size(); ++i)
            out << r << ',' << replicas[r].times[i] << ',' << replicas[r].pedestals[i]
                << '\n';
}

void write_exclusion_csv(std::ostream& out, std::span<const ExclusionResult> replicas) {
    PrecisionGuard guard(out);
    out << "replica,time,rightmost\n";
    for (std::size_t r = 0; r < replicas.size(); ++r)
        for (std::size_t i = 0; i < replicas[r].times.size(); ++i)
            out << r << ',' << replicas[r].times[i] << ',' << replicas[r].rightmost[i]
                << '\n';
}

void write_first_layer_csv(std::ostream& out, const FirstLayerTrace& trace) {
    PrecisionGuard guard(out);
    out << "time,left,right\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out << trace.times[i] << ',';
        if (trace.left[i] == kNoLeftEnd)
            out << "inf";
        else
            out << trace.left[i];
        out << ',';
        if (trace.right[i] == kNoRightEnd)
            out << "-inf";
        else
            out << trace.right[i];
        out << '\n';
    }
}

void write_level_lines_json(std::ostream& out, const LevelLineSet& set) {
    nlohmann::json doc;
    doc["horizon"] = set.horizon;
    doc["max_layer"] = set.max_layer;
    auto& curves = doc["curves"] = nlohmann::json::array();
    for (const auto& c : set.curves) {
        nlohmann::json jc;
        jc["layer"] = c.layer;
        jc["closed"] = c.closed;
        jc["candidate_unbounded"] = c.candidate_unbounded;
        auto& verts = jc["vertices"] = nlohmann::json::array();
        for (const auto& [t, s] : c.vertices) verts.push_back({t, s});
        curves.push_back(std::move(jc));
    }
    out << doc.dump(2) << '\n';
}

} // namespace rpng
