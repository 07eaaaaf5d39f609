#pragma once

#include <ostream>
#include <string>

#include "families.hpp"
#include "fitting.hpp"
#include "flow.hpp"
#include "types.hpp"

namespace dricci {

// A profile plus its normals and rotational resolution; the unit that moves
// through files.
struct ProfileRecord {
  ProfileCurve profile;
  NormalProfile normal;
  int l = 24;
};

// Full decimal precision; round-trips any double through text.
std::string format_g17(double v);

// Wavefront OBJ. Vertices in m-major order; a layer with f = 0 (within
// 1e-12 * max f) is welded to a single axis vertex and its band becomes
// triangles. Normals are written per (m, n), so tip normals stay m-dependent
// even though the tip position is shared.
void write_obj(std::ostream& out, const RevolutionSurface& surface, const NormalProfile& normals);

std::string profile_to_json(const ProfileRecord& rec);
ProfileRecord profile_from_json(const std::string& text);

void save_profile(const std::string& path, const ProfileRecord& rec);
ProfileRecord load_profile(const std::string& path);
void save_obj(const std::string& path, const RevolutionSurface& surface, const NormalProfile& normals);

// Columns: n, u_n, f, h, a, b.
void write_profile_csv(std::ostream& out, const FamilySurface& fs);

// Columns: t, n, f, h, a, b, K, H, A, r. Face columns are blank on the
// n = k row (there are k faces for k+1 layers).
void write_trace_csv(std::ostream& out, const FlowTrace& trace);

std::string fit_to_json(const CgcFit& fit);
std::string fit_to_json(const NegativeFit& fit);
// Picks fit_cgc or negative_fit by the sign of the curvature ratio.
std::string fit_report_json(const FlowState& state);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace dricci
