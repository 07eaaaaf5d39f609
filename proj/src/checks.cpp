#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "families.hpp"
#include "flow.hpp"
#include "geometry.hpp"

namespace dricci {

void CheckTolerances::validate() const {
  for (double t : {unit_normal, circularity, curvature_consistency, steiner, mixed_area,
                   rotation_independence, cgc_constancy, catenoid_minimality, h_consistency,
                   normal_consistency, rhs_agreement, jacobian_fd, stationarity})
    if (!(t > 0)) fail(ErrorCode::InvalidArgument, "tolerances must be positive");
}

CheckResult& CheckReport::entry(const std::string& invariant, double tolerance) {
  for (auto& r : results)
    if (r.invariant == invariant) return r;
  results.push_back(CheckResult{invariant, tolerance, 0, 0, ""});
  return results.back();
}

void CheckReport::observe(const std::string& invariant, double tolerance, double value) {
  CheckResult& r = entry(invariant, tolerance);
  r.worst = std::max(r.worst, value);
  ++r.cases;
}

void CheckReport::observe_failure(const std::string& invariant, double tolerance,
                                  const std::string& what) {
  CheckResult& r = entry(invariant, tolerance);
  r.worst = std::numeric_limits<double>::infinity();
  ++r.cases;
  if (r.detail.empty()) r.detail = what;
}

bool CheckReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass(); });
}

std::string CheckReport::summary() const {
  std::ostringstream os;
  os << "check seed=" << seed << " trials=" << trials << "\n";
  for (const auto& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%s %-24s worst %-10.3g tol %-8.3g (%ld cases)",
                  r.pass() ? "PASS" : "FAIL", r.invariant.c_str(), r.worst, r.tolerance, r.cases);
    os << line;
    if (!r.detail.empty()) os << "  [" << r.detail << "]";
    os << "\n";
  }
  os << "overall: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

double sup_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double d = 0;
  for (size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

// Random profile with positive radii, nonzero edges, and optionally a cone
// tip f(k) = 0.
void random_surface(std::mt19937_64& rng, RevolutionSurface& s, NormalProfile& np) {
  std::uniform_int_distribution<int> kd(3, 12), ld(3, 40);
  std::uniform_real_distribution<double> u01(0, 1);
  const int k = kd(rng);
  s.l = ld(rng);
  s.profile.f.resize(k + 1);
  s.profile.h.resize(k + 1);
  s.profile.f[0] = 0.5 + u01(rng);
  s.profile.h[0] = 0;
  for (int n = 1; n <= k; ++n) {
    s.profile.f[n] = std::clamp(s.profile.f[n - 1] * std::exp(0.6 * (u01(rng) - 0.5)), 0.05, 3.0);
    const double step = 0.05 + 0.55 * u01(rng);
    s.profile.h[n] = s.profile.h[n - 1] + (u01(rng) < 0.8 ? step : -step);
  }
  if (u01(rng) < 0.3) s.profile.f[k] = 0;
  const double th = 2 * M_PI * u01(rng);
  np = propagate_normal(s.profile, std::cos(th), std::sin(th));
}

}  // namespace

void check_surface_suite(const RevolutionSurface& s, const NormalProfile& np,
                         std::mt19937_64& rng, const CheckTolerances& tols, CheckReport& report) {
  std::uniform_real_distribution<double> u01(0, 1);
  const int k = s.profile.layers() - 1;

  for (size_t n = 0; n < np.a.size(); ++n)
    report.observe("unit-normals", tols.unit_normal,
                   std::abs(np.a[n] * np.a[n] + np.b[n] * np.b[n] - 1));

  const VertexGrid grid = build_vertices(s);
  for (int n = 0; n < k; ++n) {
    const Quad q = face_quad(grid, 0, n);
    const Quad nq = normal_quad(np, s.l, 0, n);

    try {
      const double diam = face_diameter(q);
      report.observe("face-circularity", tols.circularity,
                     circumcircle_residual(q) / std::max(diam, 1e-300));
    } catch (const Error& e) {
      report.observe_failure("face-circularity", tols.circularity, e.what());
    }

    FaceGeometry closed;
    try {
      closed = face_geometry(s, np, n);
      const FaceGeometry viaS = face_geometry_from_quads(q, nq);
      double d = rel(viaS.K, closed.K);
      d = std::max(d, rel(viaS.H, closed.H));
      d = std::max(d, rel(viaS.g11, closed.g11));
      d = std::max(d, rel(viaS.g22, closed.g22));
      d = std::max(d, rel(viaS.area, closed.area));
      report.observe("curvature-consistency", tols.curvature_consistency, d);
    } catch (const Error& e) {
      report.observe_failure("curvature-consistency", tols.curvature_consistency, e.what());
      continue;
    }

    try {
      const double t = 3 * (u01(rng) - 0.5);
      const double res = steiner_check(q, nq, t, closed.K, closed.H);
      report.observe("steiner", tols.steiner, res / std::max(1.0, closed.area));
    } catch (const Error& e) {
      report.observe_failure("steiner", tols.steiner, e.what());
    }

    try {
      const Vec3 N = face_unit_normal(q);
      const std::vector<Vec3> P = face_polygon(q), Q = face_polygon(nq);
      const double app = mixed_area(P, P, N);
      const double area = polygon_area(P, N);
      double d = rel(app, area);
      d = std::max(d, rel(mixed_area(P, Q, N), mixed_area(Q, P, N)));
      const auto [xu, xv] = face_derivatives(q);
      d = std::max(d, rel(area, N.dot(xu.cross(xv))));
      report.observe("mixed-area", tols.mixed_area, d);
    } catch (const Error& e) {
      report.observe_failure("mixed-area", tols.mixed_area, e.what());
    }

    try {
      const int m = 1 + static_cast<int>(u01(rng) * (s.l - 1));
      const FaceGeometry other =
          face_geometry_from_quads(face_quad(grid, m, n), normal_quad(np, s.l, m, n));
      report.observe("rotation-independence", tols.rotation_independence,
                     std::max(rel(other.K, closed.K), rel(other.H, closed.H)));
    } catch (const Error& e) {
      report.observe_failure("rotation-independence", tols.rotation_independence, e.what());
    }
  }
}

namespace {

void family_invariants(const FamilySurface& fs, int l, double target, bool target_is_H,
                       const char* constancy_name, double constancy_tol,
                       const CheckTolerances& tols, CheckReport& report) {
  const RevolutionSurface s{fs.profile, l};
  const int k = fs.profile.layers() - 1;
  for (int n = 0; n < k; ++n) {
    const FaceGeometry fg = face_geometry(s, fs.normal, n);
    report.observe(constancy_name, constancy_tol, std::abs((target_is_H ? fg.H : fg.K) - target));
  }

  // heights against the telescoping rule applied to the family's own normals
  double worst = 0;
  for (int n = 1; n <= k; ++n) {
    const double da = fs.normal.a[n] - fs.normal.a[n - 1];
    if (da == 0) continue;
    const double inc = (fs.normal.b[n] - fs.normal.b[n - 1]) / da * (fs.profile.f[n] - fs.profile.f[n - 1]);
    worst = std::max(worst, std::abs(fs.profile.h[n] - fs.profile.h[n - 1] - inc));
  }
  report.observe("h-consistency", tols.h_consistency, worst);

  // family normals against propagation by reflections from the same seed
  const NormalProfile prop = propagate_normal(fs.profile, fs.normal.a[0], fs.normal.b[0]);
  report.observe("normal-consistency", tols.normal_consistency,
                 std::max(sup_diff(prop.a, fs.normal.a), sup_diff(prop.b, fs.normal.b)));
}

}  // namespace

void check_family_suite(std::mt19937_64& rng, const CheckTolerances& tols, CheckReport& report) {
  std::uniform_int_distribution<int> ld(3, 40);
  std::uniform_real_distribution<double> u01(0, 1);
  const int l = ld(rng);

  try {
    const double p = 0.4 + u01(rng);
    const double c = 0.5 + 1.5 * u01(rng);
    const double sc = std::sqrt(c);
    const double u_top = (p * sc >= 1 ? std::asin(1 / (p * sc)) : M_PI / 2) / sc;
    FamilySurface fs;
    if (u01(rng) < 0.5) {
      fs = cgc_positive(p, c, linspace_grid(0, 0.9 * u_top, 8));
    } else {
      SampleGrid g;
      g.n_min = -6;
      for (int n = -6; n <= 6; ++n) g.u.push_back(0.9 * u_top * n / 6.0);
      fs = cgc_positive(p, c, g);
    }
    family_invariants(fs, l, c, false, "cgc-constancy", tols.cgc_constancy, tols, report);
  } catch (const Error& e) {
    report.observe_failure("cgc-constancy", tols.cgc_constancy, e.what());
  }

  try {
    CgcFamily fam;
    fam.kind = FamilyKind::Pseudosphere;
    family_invariants(cgc_negative(fam, linspace_grid(0.2 + u01(rng), 2.2 + u01(rng), 7)), l, -1,
                      false, "cgc-constancy", tols.cgc_constancy, tols, report);
    fam.kind = FamilyKind::CoshNegative;
    fam.p = 0.5 + 0.7 * u01(rng);
    family_invariants(cgc_negative(fam, linspace_grid(0, 0.9 * std::asinh(1 / fam.p), 7)), l, -1,
                      false, "cgc-constancy", tols.cgc_constancy, tols, report);
    fam.kind = FamilyKind::SinhNegative;
    fam.q = 0.3 + 0.5 * u01(rng);
    const double u_top = 0.9 * std::acosh(1 / fam.q);
    SampleGrid g;
    for (int n = 0; n <= 6; ++n) g.u.push_back(u_top * (6 - n) / 6.0);
    family_invariants(cgc_negative(fam, g), l, -1, false, "cgc-constancy", tols.cgc_constancy,
                      tols, report);
  } catch (const Error& e) {
    report.observe_failure("cgc-constancy", tols.cgc_constancy, e.what());
  }

  try {
    family_invariants(catenoid(linspace_grid(0, 1 + u01(rng), 7)), l, 0, true,
                      "catenoid-minimality", tols.catenoid_minimality, tols, report);
  } catch (const Error& e) {
    report.observe_failure("catenoid-minimality", tols.catenoid_minimality, e.what());
  }

  try {
    const double p = 0.4 + u01(rng);
    const double c = 0.5 + 1.5 * u01(rng);
    const double sc = std::sqrt(c);
    const int eps = u01(rng) < 0.5 ? 1 : -1;
    if (std::abs(p * sc - 1) > 0.05) {
      const double u_top = (p * sc >= 1 ? std::asin(1 / (p * sc)) : M_PI / 2) / sc;
      family_invariants(delaunay(p, c, eps, linspace_grid(0, 0.85 * u_top, 8)), l, eps * sc / 2,
                        true, "cgc-constancy", tols.cgc_constancy, tols, report);
    }
  } catch (const Error& e) {
    report.observe_failure("cgc-constancy", tols.cgc_constancy, e.what());
  }
}

void check_flow_suite(std::mt19937_64& rng, const CheckTolerances& tols, CheckReport& report) {
  std::uniform_int_distribution<int> kd(3, 8), ld(3, 40);
  std::uniform_real_distribution<double> u01(0, 1);
  const int k = kd(rng), l = ld(rng);

  try {
    FlowState st = dumbbell_state(k, l, 0.3 * u01(rng), FlowBc::PosCone);
    for (int n = 0; n < k; ++n) {
      st.f[n] *= 1 + 0.1 * (u01(rng) - 0.5);
      st.dh[n] *= 1 + 0.1 * (u01(rng) - 0.5);
    }
    st.validate();
    const Eigen::VectorXd gen = rhs_generic(st);
    const Eigen::VectorXd exp5 = rhs_explicit_flow5(st);
    report.observe("rhs-agreement", tols.rhs_agreement,
                   (gen - exp5).cwiseAbs().maxCoeff() / std::max(1.0, gen.cwiseAbs().maxCoeff()));

    const Eigen::MatrixXd Ja = flow_jacobian(st);
    const Eigen::MatrixXd Jf = flow_jacobian_fd(st);
    report.observe("jacobian-fd", tols.jacobian_fd,
                   (Ja - Jf).cwiseAbs().maxCoeff() / std::max(1.0, Ja.cwiseAbs().maxCoeff()));
  } catch (const Error& e) {
    report.observe_failure("rhs-agreement", tols.rhs_agreement, e.what());
  }

  try {
    for (FlowBc bc : {FlowBc::PosCone, FlowBc::PosCusp})
      report.observe("stationarity", tols.stationarity,
                     rhs_generic(sphere_state(k, l, bc)).cwiseAbs().maxCoeff());
  } catch (const Error& e) {
    report.observe_failure("stationarity", tols.stationarity, e.what());
  }
}

CheckReport run_check(uint64_t seed, int trials, const CheckTolerances& tols) {
  tols.validate();
  if (trials < 0) fail(ErrorCode::InvalidArgument, "trials must be >= 0");
  CheckReport report;
  report.seed = seed;
  report.trials = trials;
  report.entry("unit-normals", tols.unit_normal);
  report.entry("face-circularity", tols.circularity);
  report.entry("curvature-consistency", tols.curvature_consistency);
  report.entry("steiner", tols.steiner);
  report.entry("mixed-area", tols.mixed_area);
  report.entry("rotation-independence", tols.rotation_independence);
  report.entry("cgc-constancy", tols.cgc_constancy);
  report.entry("catenoid-minimality", tols.catenoid_minimality);
  report.entry("h-consistency", tols.h_consistency);
  report.entry("normal-consistency", tols.normal_consistency);
  report.entry("rhs-agreement", tols.rhs_agreement);
  report.entry("jacobian-fd", tols.jacobian_fd);
  report.entry("stationarity", tols.stationarity);

  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    RevolutionSurface s;
    NormalProfile np;
    random_surface(rng, s, np);
    check_surface_suite(s, np, rng, tols, report);
    check_family_suite(rng, tols, report);
    check_flow_suite(rng, tols, report);
  }
  return report;
}

}  // namespace dricci
