#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "families.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "types.hpp"

using namespace dricci;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a dricci::Error");
  return ErrorCode::InvalidArgument;
}

// Worst-case |K - target| (or |H - target| when mean is set) over all faces.
double curvature_spread(const FamilySurface& fs, int l, double target, bool mean = false) {
  RevolutionSurface s{fs.profile, l};
  double worst = 0;
  for (int n = 0; n + 1 < fs.grid.count(); ++n) {
    const FaceGeometry fg = face_geometry(s, fs.normal, n);
    worst = std::max(worst, std::abs((mean ? fg.H : fg.K) - target));
  }
  return worst;
}

// Residual of the telescoping relation dh = db df / da on every band.
double h_consistency(const FamilySurface& fs) {
  const auto& f = fs.profile.f;
  const auto& h = fs.profile.h;
  const auto& a = fs.normal.a;
  const auto& b = fs.normal.b;
  double worst = 0;
  for (size_t i = 1; i < f.size(); ++i) {
    const double step = (b[i] - b[i - 1]) * (f[i] - f[i - 1]) / (a[i] - a[i - 1]);
    worst = std::max(worst, std::abs(h[i] - h[i - 1] - step));
  }
  return worst;
}

// Worst normal-profile mismatch against propagate_normal from the same seed.
double normal_consistency(const FamilySurface& fs) {
  NormalProfile np = propagate_normal(fs.profile, fs.normal.a[0], fs.normal.b[0]);
  double worst = 0;
  for (size_t i = 0; i < np.a.size(); ++i) {
    worst = std::max(worst, std::abs(np.a[i] - fs.normal.a[i]));
    worst = std::max(worst, std::abs(np.b[i] - fs.normal.b[i]));
  }
  return worst;
}

SampleGrid pi12_grid(int lo, int hi) {
  SampleGrid g;
  g.n_min = lo;
  for (int n = lo; n <= hi; ++n) g.u.push_back(M_PI * n / 12);
  return g;
}

}  // namespace

TEST_CASE("unit sphere family has sine heights and cosine normals") {
  const SampleGrid grid = pi12_grid(0, 6);
  FamilySurface fs = cgc_positive(1.0, 1.0, grid);
  for (int i = 0; i <= 6; ++i) {
    const double u = grid.at(i);
    CHECK(fs.profile.f[i] == doctest::Approx(std::cos(u)).epsilon(1e-14));
    CHECK(std::abs(fs.profile.h[i] - std::sin(u)) < 1e-14);
    CHECK(std::abs(fs.normal.a[i] - std::cos(u)) < 1e-14);
    CHECK(std::abs(fs.normal.b[i] - std::sin(u)) < 1e-14);
  }
  CHECK(curvature_spread(fs, 24, 1.0) < 1e-12);
}

TEST_CASE("spindle and bulge families keep K = 1 on every face") {
  FamilySurface spindle = cgc_positive(0.9, 1.0, pi12_grid(0, 6));
  CHECK(curvature_spread(spindle, 24, 1.0) < 1e-10);

  const double umax = std::asin(1.0 / 1.2);
  SampleGrid bulge_grid;
  bulge_grid.n_min = 0;
  for (int n = 0; n <= 6; ++n) bulge_grid.u.push_back(umax * n / 6);
  FamilySurface bulge = cgc_positive(1.2, 1.0, bulge_grid);
  CHECK(curvature_spread(bulge, 24, 1.0) < 1e-10);
  // The grid endpoint sits exactly on the domain boundary: vertical tangent.
  CHECK(std::abs(bulge.normal.a[6]) < 1e-7);
  CHECK(bulge.normal.b[6] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("negative grid indices mirror the height sum") {
  const SampleGrid grid = pi12_grid(-6, 6);
  FamilySurface fs = cgc_positive(0.9, 1.0, grid);
  const int i0 = 6;  // layer of grid index 0
  CHECK(fs.profile.h[i0] == 0.0);
  for (int n = 1; n <= 6; ++n) {
    CHECK(std::abs(fs.profile.h[i0 + n] + fs.profile.h[i0 - n]) < 1e-14);
    CHECK(std::abs(fs.profile.f[i0 + n] - fs.profile.f[i0 - n]) < 1e-14);
    CHECK(std::abs(fs.normal.a[i0 + n] - fs.normal.a[i0 - n]) < 1e-14);
    CHECK(std::abs(fs.normal.b[i0 + n] + fs.normal.b[i0 - n]) < 1e-14);
  }
  CHECK(curvature_spread(fs, 24, 1.0) < 1e-10);
}

TEST_CASE("discrete pseudosphere matches the printed closed forms") {
  SampleGrid grid = parse_grid("n : n = 0 .. 4");
  CgcFamily fam;
  fam.kind = FamilyKind::Pseudosphere;
  FamilySurface fs = cgc_negative(fam, grid);
  for (int n = 0; n <= 4; ++n) {
    CHECK(fs.profile.f[n] == doctest::Approx(1.0 / std::cosh(n)).epsilon(1e-14));
    CHECK(fs.normal.a[n] == doctest::Approx(std::tanh(n)).epsilon(1e-14));
    CHECK(std::abs(fs.normal.b[n] - 1.0 / std::cosh(n)) < 1e-15);
  }
  const double c1 = std::cosh(1.0);
  const double h1 = (c1 - 1) * (c1 - 1) / (std::sinh(1.0) * c1);
  CHECK(fs.profile.h[1] == doctest::Approx(h1).epsilon(1e-14));
  CHECK(curvature_spread(fs, 24, -1.0) < 1e-12);
}

TEST_CASE("cosh-type family ends in a vertical normal cusp") {
  SampleGrid grid = parse_grid("log(1 + sqrt(2)) / 4 * n : n = 0 .. 4");
  CgcFamily fam;
  fam.kind = FamilyKind::CoshNegative;
  fam.p = 1.0;
  FamilySurface fs = cgc_negative(fam, grid);
  // u_4 = arcsinh(1), so sinh u_4 = 1: the normal turns straight down.
  CHECK(std::abs(fs.normal.a[4]) < 1e-12);
  CHECK(fs.normal.b[4] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(fs.profile.f[4] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(curvature_spread(fs, 24, -1.0) < 1e-10);
}

TEST_CASE("sinh-type family runs down a decreasing grid to a cone point") {
  SampleGrid grid = parse_grid("(1 - n/4) * acosh(2) : n = 0 .. 4");
  CgcFamily fam;
  fam.kind = FamilyKind::SinhNegative;
  fam.q = 0.5;
  FamilySurface fs = cgc_negative(fam, grid);
  // q cosh u_0 = 1: vertical tangent at the start (a is sqrt(ulp) there);
  // u_4 = 0 puts the last vertex on the axis.
  CHECK(std::abs(fs.normal.a[0]) < 1e-7);
  CHECK(fs.normal.b[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fs.profile.f[4] == 0.0);
  // h descends with u, and u descends with n, so the layers climb.
  for (int n = 1; n <= 4; ++n) CHECK(fs.profile.h[n] > fs.profile.h[n - 1]);
  CHECK(curvature_spread(fs, 24, -1.0) < 1e-10);

  CHECK(code_of([&] { cgc_negative(fam, pi12_grid(0, 4)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("catenoid family is discrete minimal") {
  FamilySurface even = catenoid(parse_grid("0.3 * n : n = 0 .. 5"));
  CHECK(curvature_spread(even, 24, 0.0, true) < 1e-12);
  CHECK(even.profile.h[1] == doctest::Approx(std::sinh(0.3)).epsilon(1e-14));
  CHECK(even.profile.h[1] == doctest::Approx(0.3045203).epsilon(1e-7));

  FamilySurface quad = catenoid(parse_grid("0.1 * n^2 : n = 0 .. 5"));
  CHECK(curvature_spread(quad, 24, 0.0, true) < 1e-12);

  // Single step across the waist: h(1)/(f(1)-f(0)) blows up like 2/eps.
  double prev = 0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    SampleGrid g;
    g.n_min = 0;
    g.u = {0.0, eps};
    FamilySurface fs = catenoid(g);
    const double ratio = fs.profile.h[1] / (fs.profile.f[1] - fs.profile.f[0]);
    CHECK(ratio == doctest::Approx(2.0 / eps).epsilon(1e-4));
    CHECK(ratio > prev);
    prev = ratio;
  }
}

TEST_CASE("delaunay surfaces have constant mean curvature eps sqrt(c)/2") {
  const SampleGrid grid = pi12_grid(0, 6);

  // p = 1 parallel surface is the concentric sphere of radius 2.
  FamilySurface ball = delaunay(1.0, 1.0, +1, grid);
  for (int i = 0; i <= 6; ++i) {
    const double u = grid.at(i);
    CHECK(ball.profile.f[i] == doctest::Approx(2 * std::cos(u)).epsilon(1e-13));
    CHECK(std::abs(ball.profile.h[i] - 2 * std::sin(u)) < 1e-13);
  }
  CHECK(curvature_spread(ball, 24, 0.5, true) < 1e-12);
  CHECK(curvature_spread(ball, 24, 0.25) < 1e-12);

  FamilySurface unduloid = delaunay(0.9, 1.0, +1, grid);
  CHECK(curvature_spread(unduloid, 24, 0.5, true) < 1e-10);

  // eps = -1 on a spindle lands on the far side of the axis; the profile is
  // re-oriented to positive radius with H unchanged.
  FamilySurface far_side = delaunay(0.9, 1.0, -1, grid);
  for (double f : far_side.profile.f) CHECK(f > 0);
  CHECK(curvature_spread(far_side, 24, -0.5, true) < 1e-10);

  const double umax = std::asin(1.0 / 1.2);
  SampleGrid bulge_grid;
  bulge_grid.n_min = 0;
  for (int n = 0; n <= 6; ++n) bulge_grid.u.push_back(umax * n / 6);
  FamilySurface nodoid = delaunay(1.2, 1.0, -1, bulge_grid);
  CHECK(curvature_spread(nodoid, 24, -0.5, true) < 1e-10);
}

TEST_CASE("family domain violations are reported") {
  CHECK(code_of([] { cgc_positive(1.2, 1.0, pi12_grid(0, 6)); }) == ErrorCode::DomainViolation);
  CHECK(code_of([] {
    cgc_positive(0.5, 1.0, linspace_grid(0, 2.0, 4));
  }) == ErrorCode::DomainViolation);

  CgcFamily cosh_fam;
  cosh_fam.kind = FamilyKind::CoshNegative;
  cosh_fam.p = 2.0;
  CHECK(code_of([&] { cgc_negative(cosh_fam, linspace_grid(0, 1, 4)); }) == ErrorCode::DomainViolation);

  CgcFamily sinh_fam;
  sinh_fam.kind = FamilyKind::SinhNegative;
  sinh_fam.q = 0.5;
  SampleGrid deep;
  deep.n_min = 0;
  deep.u = {2.0, 1.0, 0.0};  // q cosh 2 > 1
  CHECK(code_of([&] { cgc_negative(sinh_fam, deep); }) == ErrorCode::DomainViolation);
}

TEST_CASE("repeated sin^2 between layers is a degenerate step") {
  SampleGrid g;
  g.n_min = -1;
  g.u = {-0.3, 0.3};
  CHECK(code_of([&] { cgc_positive(0.9, 1.0, g); }) == ErrorCode::DegenerateStep);
}

TEST_CASE("family parameter validation") {
  CHECK(code_of([] { cgc_positive(-1.0, 1.0, pi12_grid(0, 3)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { cgc_positive(0.9, 0.0, pi12_grid(0, 3)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { delaunay(0.9, 1.0, 0, pi12_grid(0, 3)); }) == ErrorCode::InvalidArgument);

  CgcFamily fam;
  fam.kind = FamilyKind::SinhNegative;
  fam.q = 1.0;
  CHECK(code_of([&] { fam.validate(); }) == ErrorCode::InvalidArgument);
  fam.kind = FamilyKind::SpherePositive;  // cgc_negative wants a K = -1 kind
  fam.q = 0.5;
  CHECK(code_of([&] { cgc_negative(fam, pi12_grid(0, 3)); }) == ErrorCode::InvalidArgument);

  for (FamilyKind k : {FamilyKind::SpherePositive, FamilyKind::Pseudosphere,
                       FamilyKind::CoshNegative, FamilyKind::SinhNegative,
                       FamilyKind::Catenoid, FamilyKind::Delaunay})
    CHECK(family_from_name(family_name(k)) == k);
  CHECK(code_of([] { family_from_name("torus"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("make_family dispatches every kind") {
  SampleGrid inc = parse_grid("0.2 * n : n = 0 .. 4");
  SampleGrid dec = parse_grid("(1 - n/4) * acosh(2) : n = 0 .. 4");
  for (FamilyKind k : {FamilyKind::SpherePositive, FamilyKind::Pseudosphere,
                       FamilyKind::CoshNegative, FamilyKind::SinhNegative,
                       FamilyKind::Catenoid, FamilyKind::Delaunay}) {
    CgcFamily fam;
    fam.kind = k;
    FamilySurface fs = make_family(fam, k == FamilyKind::SinhNegative ? dec : inc);
    CHECK(fs.profile.f.size() == 5);
  }
}

TEST_CASE("smooth reference hits the printed sample points") {
  CgcFamily sphere;
  auto [f0, h0] = smooth_reference(sphere, M_PI / 2);
  CHECK(std::abs(f0) < 1e-15);
  CHECK(h0 == doctest::Approx(1.0).epsilon(1e-12));

  CgcFamily pseudo;
  pseudo.kind = FamilyKind::Pseudosphere;
  auto [f1, h1] = smooth_reference(pseudo, 1.0);
  CHECK(f1 == doctest::Approx(0.6480543).epsilon(1e-7));
  CHECK(h1 == doctest::Approx(0.2384058).epsilon(1e-7));
  CHECK(f1 == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-14));
  CHECK(h1 == doctest::Approx(1.0 - std::tanh(1.0)).epsilon(1e-14));

  CgcFamily cat;
  cat.kind = FamilyKind::Catenoid;
  auto [f2, h2] = smooth_reference(cat, 0.7);
  CHECK(f2 == doctest::Approx(std::cosh(0.7)).epsilon(1e-14));
  CHECK(h2 == 0.7);

  CgcFamily sinh_fam;
  sinh_fam.kind = FamilyKind::SinhNegative;
  sinh_fam.q = 0.5;
  auto [f3, h3] = smooth_reference(sinh_fam, 1.0);
  CHECK(f3 == doctest::Approx(0.5 * std::sinh(1.0)).epsilon(1e-14));
  CHECK(h3 < 0);  // height descends with u for this branch

  CgcFamily wide;
  wide.p = 1.2;
  CHECK(code_of([&] { smooth_reference(wide, M_PI / 2); }) == ErrorCode::DomainViolation);
  CHECK(code_of([&] { smooth_reference(sinh_fam, -0.5); }) == ErrorCode::DomainViolation);
}

TEST_CASE("closed-form families satisfy the height and normal relations") {
  std::vector<FamilySurface> all;
  all.push_back(cgc_positive(0.9, 1.0, pi12_grid(-6, 6)));
  CgcFamily pseudo;
  pseudo.kind = FamilyKind::Pseudosphere;
  all.push_back(cgc_negative(pseudo, parse_grid("0.8 * n : n = 0 .. 4")));
  CgcFamily cosh_fam;
  cosh_fam.kind = FamilyKind::CoshNegative;
  cosh_fam.p = 0.7;
  all.push_back(cgc_negative(cosh_fam, parse_grid("0.25 * n : n = 0 .. 4")));
  CgcFamily sinh_fam;
  sinh_fam.kind = FamilyKind::SinhNegative;
  sinh_fam.q = 0.5;
  all.push_back(cgc_negative(sinh_fam, parse_grid("(1 - n/4) * acosh(2) : n = 0 .. 4")));
  all.push_back(catenoid(parse_grid("0.3 * n : n = 0 .. 5")));

  for (const FamilySurface& fs : all) {
    CHECK(h_consistency(fs) < 1e-12);
    CHECK(normal_consistency(fs) < 1e-10);
  }
}

TEST_CASE("discrete heights converge to the smooth profile at second order") {
  CgcFamily fam;
  fam.p = 0.9;
  const double U = M_PI / 2;
  const double h_smooth = smooth_reference(fam, U).second;

  std::vector<double> gaps;
  for (int M : {8, 16, 32, 64}) {
    FamilySurface fs = cgc_positive(0.9, 1.0, linspace_grid(0, U, M));
    gaps.push_back(std::abs(fs.profile.h.back() - h_smooth));
  }
  for (size_t i = 0; i + 1 < gaps.size(); ++i) {
    const double order = std::log2(gaps[i] / gaps[i + 1]);
    CHECK(order >= 2.0);
  }
}
