#include "dricci/dricci.h"

#include <cstring>
#include <sstream>
#include <string>

#include "compare.hpp"
#include "checks.hpp"
#include "families.hpp"
#include "fitting.hpp"
#include "flow.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "io.hpp"

struct dricci_profile {
  dricci::ProfileRecord rec;
  bool has_grid = false;
  dricci::SampleGrid grid;
};

struct dricci_trace {
  dricci::FlowTrace trace;
};

namespace {

thread_local std::string g_last_error;

dricci_status map_code(dricci::ErrorCode code) {
  using dricci::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return DRICCI_INVALID_ARGUMENT;
    case ErrorCode::ZeroEdge: return DRICCI_ZERO_EDGE;
    case ErrorCode::DegenerateBand: return DRICCI_DEGENERATE_BAND;
    case ErrorCode::ShapeMismatch: return DRICCI_SHAPE_MISMATCH;
    case ErrorCode::NonParallel: return DRICCI_NON_PARALLEL;
    case ErrorCode::DomainViolation: return DRICCI_DOMAIN_VIOLATION;
    case ErrorCode::DegenerateStep: return DRICCI_DEGENERATE_STEP;
    case ErrorCode::SingularJacobian: return DRICCI_SINGULAR_JACOBIAN;
    case ErrorCode::StepFailure: return DRICCI_STEP_FAILURE;
    case ErrorCode::FitDomain: return DRICCI_FIT_DOMAIN;
    case ErrorCode::DivisionByZero: return DRICCI_DIVISION_BY_ZERO;
    case ErrorCode::ParseError: return DRICCI_PARSE_ERROR;
    case ErrorCode::IoError: return DRICCI_IO_ERROR;
  }
  return DRICCI_UNKNOWN;
}

template <typename Fn>
dricci_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DRICCI_OK;
  } catch (const dricci::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DRICCI_UNKNOWN;
  }
}

void require(bool ok, const char* what) {
  if (!ok) dricci::fail(dricci::ErrorCode::InvalidArgument, what);
}

dricci::CgcFamily family_args(const char* family, double p, double q, double c, int eps) {
  require(family != nullptr, "family name is required");
  dricci::CgcFamily fam;
  fam.kind = dricci::family_from_name(family);
  fam.p = p;
  fam.q = q;
  fam.c = c;
  fam.eps = eps;
  fam.validate();
  return fam;
}

void copy_out(const std::string& text, char* buf, size_t cap) {
  if (!buf || cap == 0) return;
  const size_t n = std::min(text.size(), cap - 1);
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
}

}  // namespace

extern "C" {

const char* dricci_version(void) { return "dricci 1.0.0"; }

const char* dricci_last_error(void) { return g_last_error.c_str(); }

dricci_status dricci_profile_from_family(const char* family, double p, double q, double c,
                                         int eps, const char* grid, int l,
                                         dricci_profile** out) {
  return guarded([&] {
    require(out != nullptr, "output handle is required");
    require(grid != nullptr, "grid expression is required");
    const dricci::CgcFamily fam = family_args(family, p, q, c, eps);
    const dricci::SampleGrid g = dricci::parse_grid(grid);
    const dricci::FamilySurface fs = dricci::make_family(fam, g);
    auto* handle = new dricci_profile;
    handle->rec = dricci::ProfileRecord{fs.profile, fs.normal, l};
    handle->rec.profile.validate();
    dricci::RevolutionSurface{fs.profile, l}.validate();
    handle->has_grid = true;
    handle->grid = fs.grid;
    *out = handle;
  });
}

dricci_status dricci_profile_from_json_file(const char* path, dricci_profile** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "path and output handle are required");
    auto* handle = new dricci_profile;
    handle->rec = dricci::load_profile(path);
    *out = handle;
  });
}

dricci_status dricci_profile_fixture(const char* name, int k, int l, double param,
                                     dricci_profile** out) {
  return guarded([&] {
    require(out != nullptr && name != nullptr, "name and output handle are required");
    dricci::FlowState st;
    const std::string which = name;
    if (which == "sphere")
      st = dricci::sphere_state(k, l, dricci::FlowBc::PosCone);
    else if (which == "dumbbell")
      st = dricci::dumbbell_state(k, l, param, dricci::FlowBc::PosCone);
    else
      dricci::fail(dricci::ErrorCode::InvalidArgument, "unknown fixture '" + which + "'");
    auto* handle = new dricci_profile;
    handle->rec = dricci::ProfileRecord{st.profile(), st.normals(), l};
    *out = handle;
  });
}

void dricci_profile_destroy(dricci_profile* p) { delete p; }

int dricci_profile_layers(const dricci_profile* p) {
  return p ? p->rec.profile.layers() : 0;
}

int dricci_profile_l(const dricci_profile* p) { return p ? p->rec.l : 0; }

dricci_status dricci_profile_values(const dricci_profile* p, double* f, double* h,
                                    double* a, double* b) {
  return guarded([&] {
    require(p != nullptr, "null profile");
    const int N = p->rec.profile.layers();
    for (int n = 0; n < N; ++n) {
      if (f) f[n] = p->rec.profile.f[n];
      if (h) h[n] = p->rec.profile.h[n];
      if (a) a[n] = p->rec.normal.a[n];
      if (b) b[n] = p->rec.normal.b[n];
    }
  });
}

dricci_status dricci_profile_face(const dricci_profile* p, int n, double out5[5]) {
  return guarded([&] {
    require(p != nullptr && out5 != nullptr, "null argument");
    require(n >= 0 && n < p->rec.profile.layers() - 1, "band index out of range");
    const dricci::RevolutionSurface s{p->rec.profile, p->rec.l};
    const dricci::FaceGeometry fg = dricci::face_geometry(s, p->rec.normal, n);
    out5[0] = fg.g11;
    out5[1] = fg.g22;
    out5[2] = fg.K;
    out5[3] = fg.H;
    out5[4] = fg.area;
  });
}

int dricci_profile_has_grid(const dricci_profile* p) { return p && p->has_grid ? 1 : 0; }

dricci_status dricci_profile_grid(const dricci_profile* p, double* u, int* n_min) {
  return guarded([&] {
    require(p != nullptr, "null profile");
    require(p->has_grid, "profile carries no parameter grid");
    if (n_min) *n_min = p->grid.n_min;
    if (u)
      for (int i = 0; i < p->grid.count(); ++i) u[i] = p->grid.u[i];
  });
}

dricci_status dricci_profile_write_obj(const dricci_profile* p, const char* path) {
  return guarded([&] {
    require(p != nullptr && path != nullptr, "null argument");
    dricci::save_obj(path, dricci::RevolutionSurface{p->rec.profile, p->rec.l}, p->rec.normal);
  });
}

dricci_status dricci_profile_write_json(const dricci_profile* p, const char* path) {
  return guarded([&] {
    require(p != nullptr && path != nullptr, "null argument");
    dricci::save_profile(path, p->rec);
  });
}

dricci_status dricci_profile_write_csv(const dricci_profile* p, const char* path) {
  return guarded([&] {
    require(p != nullptr && path != nullptr, "null argument");
    require(p->has_grid, "profile carries no parameter grid");
    std::ostringstream os;
    dricci::write_profile_csv(os, dricci::FamilySurface{p->rec.profile, p->rec.normal, p->grid});
    dricci::write_text_file(path, os.str());
  });
}

dricci_status dricci_flow_run(const dricci_profile* p, const char* bc, int unnormalized,
                              double dt, double t_end, int stride, dricci_trace** out) {
  return guarded([&] {
    require(p != nullptr && bc != nullptr && out != nullptr, "null argument");
    const dricci::FlowBc tag = dricci::bc_from_name(bc, unnormalized != 0);
    const dricci::FlowState st = dricci::family_state(
        dricci::FamilySurface{p->rec.profile, p->rec.normal, dricci::SampleGrid{}}, p->rec.l, tag);
    dricci::FlowOptions opts;
    opts.dt = dt;
    opts.t_end = t_end;
    opts.stride = stride;
    auto* handle = new dricci_trace;
    handle->trace = dricci::integrate(st, opts);
    *out = handle;
  });
}

void dricci_trace_destroy(dricci_trace* t) { delete t; }

int dricci_trace_snapshots(const dricci_trace* t) {
  return t ? static_cast<int>(t->trace.states.size()) : 0;
}

int dricci_trace_stopped_early(const dricci_trace* t) {
  return t && t->trace.stopped_early ? 1 : 0;
}

double dricci_trace_time(const dricci_trace* t, int i) {
  if (!t || i < 0 || i >= static_cast<int>(t->trace.times.size())) return 0;
  return t->trace.times[i];
}

double dricci_trace_r(const dricci_trace* t, int i) {
  if (!t || i < 0 || i >= static_cast<int>(t->trace.r_history.size())) return 0;
  return t->trace.r_history[i];
}

double dricci_trace_area(const dricci_trace* t, int i) {
  if (!t || i < 0 || i >= static_cast<int>(t->trace.area_history.size())) return 0;
  return t->trace.area_history[i];
}

dricci_status dricci_trace_state(const dricci_trace* t, int i, dricci_profile** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    require(i >= 0 && i < static_cast<int>(t->trace.states.size()), "snapshot index out of range");
    const dricci::FlowState& st = t->trace.states[i];
    auto* handle = new dricci_profile;
    handle->rec = dricci::ProfileRecord{st.profile(), st.normals(), st.l};
    *out = handle;
  });
}

dricci_status dricci_trace_write_csv(const dricci_trace* t, const char* path) {
  return guarded([&] {
    require(t != nullptr && path != nullptr, "null argument");
    std::ostringstream os;
    dricci::write_trace_csv(os, t->trace);
    dricci::write_text_file(path, os.str());
  });
}

dricci_status dricci_trace_fit_json(const dricci_trace* t, char* buf, size_t cap) {
  return guarded([&] {
    require(t != nullptr, "null trace");
    require(!t->trace.states.empty(), "empty trace");
    copy_out(dricci::fit_report_json(t->trace.final_state()), buf, cap);
  });
}

dricci_status dricci_compare(const char* family, double p, double q, double c, int eps,
                             double u_max, const int* levels, int n_levels,
                             const char* csv_path, double* order_out) {
  return guarded([&] {
    require(levels != nullptr && n_levels > 0, "refinement levels are required");
    const dricci::CgcFamily fam = family_args(family, p, q, c, eps);
    const dricci::CompareReport report =
        dricci::run_compare(fam, u_max, std::vector<int>(levels, levels + n_levels));
    if (csv_path) {
      std::ostringstream os;
      dricci::write_compare_csv(os, report);
      dricci::write_text_file(csv_path, os.str());
    }
    if (order_out) *order_out = report.order;
  });
}

dricci_status dricci_check(uint64_t seed, int trials, const char* tol_overrides,
                           int* passed, char* buf, size_t cap) {
  return guarded([&] {
    dricci::CheckTolerances tols;
    if (tol_overrides && *tol_overrides) {
      std::istringstream items(tol_overrides);
      std::string item;
      while (std::getline(items, item, ',')) {
        const size_t eq = item.find('=');
        require(eq != std::string::npos, "tolerance override must look like name=value");
        const std::string name = item.substr(0, eq);
        char* end = nullptr;
        const double value = std::strtod(item.c_str() + eq + 1, &end);
        require(end && *end == '\0', "malformed tolerance value");
        if (name == "unit-normals") tols.unit_normal = value;
        else if (name == "face-circularity") tols.circularity = value;
        else if (name == "curvature-consistency") tols.curvature_consistency = value;
        else if (name == "steiner") tols.steiner = value;
        else if (name == "mixed-area") tols.mixed_area = value;
        else if (name == "rotation-independence") tols.rotation_independence = value;
        else if (name == "cgc-constancy") tols.cgc_constancy = value;
        else if (name == "catenoid-minimality") tols.catenoid_minimality = value;
        else if (name == "h-consistency") tols.h_consistency = value;
        else if (name == "normal-consistency") tols.normal_consistency = value;
        else if (name == "rhs-agreement") tols.rhs_agreement = value;
        else if (name == "jacobian-fd") tols.jacobian_fd = value;
        else if (name == "stationarity") tols.stationarity = value;
        else dricci::fail(dricci::ErrorCode::InvalidArgument, "unknown invariant '" + name + "'");
      }
    }
    const dricci::CheckReport report = dricci::run_check(seed, trials, tols);
    if (passed) *passed = report.passed() ? 1 : 0;
    copy_out(report.summary(), buf, cap);
  });
}

}  // extern "C"
