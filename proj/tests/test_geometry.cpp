#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "geometry.hpp"
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

RevolutionSurface random_surface(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0, 1);
  RevolutionSurface s;
  s.l = 3 + static_cast<int>(u01(rng) * 38);
  const int k = 3 + static_cast<int>(u01(rng) * 10);
  s.profile.f.resize(k + 1);
  s.profile.h.resize(k + 1);
  double f = 0.4 + 2.0 * u01(rng), h = 0;
  for (int n = 0; n <= k; ++n) {
    s.profile.f[n] = f;
    s.profile.h[n] = h;
    f = std::clamp(f + 0.6 * (u01(rng) - 0.5), 0.05, 3.0);
    h += (u01(rng) < 0.8 ? 1 : -1) * (0.05 + 0.55 * u01(rng));
  }
  if (u01(rng) < 0.3) s.profile.f[k] = 0;  // cone tip
  return s;
}

NormalProfile random_normals(const RevolutionSurface& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0, 1);
  const double th = 2 * M_PI * u01(rng);
  return propagate_normal(s.profile, std::cos(th), std::sin(th));
}

// unit-sphere octant: f = cos(pi n / 2k), h = sin(pi n / 2k)
RevolutionSurface sphere_surface(int k, int l) {
  RevolutionSurface s;
  s.l = l;
  for (int n = 0; n <= k; ++n) {
    s.profile.f.push_back(std::cos(M_PI * n / (2.0 * k)));
    s.profile.h.push_back(std::sin(M_PI * n / (2.0 * k)));
  }
  s.profile.f[k] = 0;
  return s;
}

}  // namespace

TEST_CASE("build_vertices matches the rotation formula") {
  RevolutionSurface s;
  s.profile.f = {1};
  s.profile.h = {0};
  s.l = 4;
  VertexGrid g = build_vertices(s);
  CHECK((g.at(0, 0) - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((g.at(1, 0) - Vec3(0, 1, 0)).norm() < 1e-15);
  CHECK((g.at(2, 0) - Vec3(-1, 0, 0)).norm() < 1e-15);
  CHECK((g.at(3, 0) - Vec3(0, -1, 0)).norm() < 1e-15);

  s.profile.f = {0};
  s.profile.h = {5};
  s.l = 7;
  g = build_vertices(s);
  for (int m = 0; m < 7; ++m) CHECK((g.at(m, 0) - Vec3(0, 0, 5)).norm() == 0);

  s.profile.f = {1, 2};
  s.profile.h = {0, 1};
  s.l = 6;
  g = build_vertices(s);
  CHECK((g.at(1, 1) - Vec3(1, std::sqrt(3.0), 1)).norm() < 1e-15);
}

TEST_CASE("vertex grid wraps in m") {
  std::mt19937_64 rng(31);
  RevolutionSurface s = random_surface(rng);
  VertexGrid g = build_vertices(s);
  CHECK((g.at(s.l, 1) - g.at(0, 1)).norm() == 0);
  CHECK((g.at(-1, 0) - g.at(s.l - 1, 0)).norm() == 0);
}

TEST_CASE("normal reflection oracles") {
  double a = 1, b = 0;
  reflect_normal(0, 1, a, b);  // vertical edge leaves a horizontal normal alone
  CHECK(a == 1.0);
  CHECK(b == 0.0);

  a = 1, b = 0;
  reflect_normal(1, 0, a, b);  // horizontal edge flips it
  CHECK(a == -1.0);
  CHECK(b == 0.0);

  a = 1, b = 0;
  reflect_normal(1, 1, a, b);  // 45-degree edge sends (1,0) to (0,-1)
  CHECK(std::abs(a) < 1e-15);
  CHECK(std::abs(b + 1) < 1e-15);
}

TEST_CASE("propagate_normal stays on the unit circle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    RevolutionSurface s = random_surface(rng);
    NormalProfile np = random_normals(s, rng);
    for (size_t n = 0; n < np.a.size(); ++n)
      CHECK(std::abs(np.a[n] * np.a[n] + np.b[n] * np.b[n] - 1) < 1e-12);
  }
}

TEST_CASE("propagate_normal rejects a zero edge") {
  ProfileCurve p;
  p.f = {1, 1};
  p.h = {0, 0};
  CHECK(code_of([&] { propagate_normal(p, 1, 0); }) == ErrorCode::ZeroEdge);
}

TEST_CASE("face_derivatives on the unit square and a degenerate quad") {
  Quad q = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  auto [xu, xv] = face_derivatives(q);
  CHECK((xu - Vec3(0, 1, 0)).norm() == 0);
  CHECK((xv - Vec3(1, 0, 0)).norm() == 0);

  q[3] = q[2];  // tip triangle: the formula stays total
  auto [tu, tv] = face_derivatives(q);
  CHECK(tu.allFinite());
  CHECK(tv.allFinite());
}

TEST_CASE("revolution faces have orthogonal derivatives") {
  RevolutionSurface s = sphere_surface(6, 24);
  VertexGrid g = build_vertices(s);
  for (int n = 0; n < 6; ++n) {
    auto [xu, xv] = face_derivatives(face_quad(g, 0, n));
    CHECK(std::abs(xu.dot(xv)) < 1e-15);
  }
}

TEST_CASE("sphere profile has K = H = 1 on every face") {
  RevolutionSurface s = sphere_surface(6, 24);
  NormalProfile np = propagate_normal(s.profile, 1, 0);
  for (int n = 0; n < 6; ++n) {
    FaceGeometry fg = face_geometry(s, np, n);
    CHECK(std::abs(fg.K - 1) < 1e-12);
    CHECK(std::abs(fg.H - 1) < 1e-12);
    CHECK(fg.g12 == 0.0);
    CHECK(std::abs(fg.area - std::sqrt(fg.g11 * fg.g22)) < 1e-15);
  }
}

TEST_CASE("cylinder band goes through the shape-operator fallback") {
  RevolutionSurface s;
  s.profile.f = {1, 1};
  s.profile.h = {0, 1};
  s.l = 16;
  NormalProfile np = propagate_normal(s.profile, 1, 0);
  CHECK(np.a[1] == 1.0);  // vertical edge: normal unchanged
  FaceGeometry fg = face_geometry(s, np, 0);
  CHECK(std::abs(fg.K) < 1e-14);
  CHECK(fg.H > 0);
}

TEST_CASE("band with f(n) = f(n+1) = 0 is rejected") {
  RevolutionSurface s;
  s.profile.f = {0, 0};
  s.profile.h = {0, 1};
  s.l = 8;
  NormalProfile np;
  np.a = {1, 1};
  np.b = {0, 0};
  CHECK(code_of([&] { face_geometry(s, np, 0); }) == ErrorCode::DegenerateBand);
}

TEST_CASE("closed forms agree with the shape operator") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    RevolutionSurface s = random_surface(rng);
    NormalProfile np = random_normals(s, rng);
    VertexGrid g = build_vertices(s);
    const int k = s.profile.layers() - 1;
    for (int n = 0; n < k; ++n) {
      FaceGeometry closed = face_geometry(s, np, n);
      FaceGeometry viaS = face_geometry_from_quads(face_quad(g, 0, n), normal_quad(np, s.l, 0, n));
      const double scaleK = std::max(1.0, std::abs(closed.K));
      const double scaleH = std::max(1.0, std::abs(closed.H));
      CHECK(std::abs(closed.K - viaS.K) < 1e-9 * scaleK);
      CHECK(std::abs(closed.H - viaS.H) < 1e-9 * scaleH);
      CHECK(std::abs(closed.area - viaS.area) < 1e-9 * closed.area);
    }
  }
}

TEST_CASE("mixed area of the unit square") {
  std::vector<Vec3> P = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  const Vec3 N(0, 0, 1);
  CHECK(std::abs(polygon_area(P, N) - 1) < 1e-15);
  CHECK(std::abs(mixed_area(P, P, N) - 1) < 1e-15);

  std::vector<Vec3> P2 = P;
  for (Vec3& v : P2) v *= 2;
  CHECK(std::abs(mixed_area(P2, P2, N) - 4) < 1e-15);  // quadratic homogeneity

  std::vector<Vec3> Pt = P;
  for (Vec3& v : Pt) v += Vec3(3, -2, 0);
  CHECK(std::abs(mixed_area(P, Pt, N) - 1) < 1e-14);  // translation invariance
}

TEST_CASE("mixed area input validation") {
  std::vector<Vec3> P = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  std::vector<Vec3> tri = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  const Vec3 N(0, 0, 1);
  CHECK(code_of([&] { mixed_area(P, tri, N); }) == ErrorCode::ShapeMismatch);

  std::vector<Vec3> rot;  // square turned 30 degrees: edges no longer parallel
  for (const Vec3& v : P) {
    const double c = std::cos(0.5), s = std::sin(0.5);
    rot.emplace_back(c * v.x() - s * v.y(), s * v.x() + c * v.y(), 0);
  }
  CHECK(code_of([&] { mixed_area(P, rot, N); }) == ErrorCode::NonParallel);
}

TEST_CASE("face polygon orientation and the determinant identities") {
  RevolutionSurface s = sphere_surface(6, 24);
  NormalProfile np = propagate_normal(s.profile, 1, 0);
  VertexGrid g = build_vertices(s);
  for (int n = 0; n < 6; ++n) {
    const Quad q = face_quad(g, 0, n);
    const Quad nq = normal_quad(np, s.l, 0, n);
    const Vec3 N = face_unit_normal(q);
    auto [xu, xv] = face_derivatives(q);
    auto [nu, nv] = face_derivatives(nq);
    const std::vector<Vec3> P = face_polygon(q), Q = face_polygon(nq);

    const double area = polygon_area(P, N);
    CHECK(area > 0);
    const double det_area = N.dot(xu.cross(xv));
    CHECK(std::abs(area - det_area) < 1e-12 * det_area);
    CHECK(std::abs(mixed_area(P, P, N) - det_area) < 1e-12 * det_area);
    CHECK(std::abs(area - face_geometry(s, np, n).area) < 1e-12 * area);

    const double axn = mixed_area(P, Q, N);
    CHECK(std::abs(axn - mixed_area(Q, P, N)) < 1e-14);  // symmetry
    const double det_axn = 0.5 * (N.dot(xu.cross(nv)) + N.dot(nu.cross(xv)));
    CHECK(std::abs(axn - det_axn) < 1e-12 * std::max(1.0, std::abs(det_axn)));
  }
}

TEST_CASE("steiner residual vanishes at t = 0 and on the sphere at t = -1") {
  RevolutionSurface s = sphere_surface(6, 24);
  NormalProfile np = propagate_normal(s.profile, 1, 0);
  VertexGrid g = build_vertices(s);
  const Quad q = face_quad(g, 0, 2);
  const Quad nq = normal_quad(np, s.l, 0, 2);
  FaceGeometry fg = face_geometry(s, np, 2);
  CHECK(steiner_check(q, nq, 0, fg.K, fg.H) == 0.0);
  // offsetting the unit sphere by -nu collapses it; both sides of the
  // Steiner formula hit zero
  CHECK(steiner_check(q, nq, -1, fg.K, fg.H) < 1e-14);
}

TEST_CASE("steiner formula holds on random surfaces") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    RevolutionSurface s = random_surface(rng);
    NormalProfile np = random_normals(s, rng);
    VertexGrid g = build_vertices(s);
    const int k = s.profile.layers() - 1;
    for (int n = 0; n < k; ++n) {
      FaceGeometry fg = face_geometry(s, np, n);
      const Quad q = face_quad(g, 0, n);
      const Quad nq = normal_quad(np, s.l, 0, n);
      for (double t : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0})
        CHECK(steiner_check(q, nq, t, fg.K, fg.H) < 1e-10 * fg.area);
    }
  }
}

TEST_CASE("faces are concyclic, and a warped quad is not") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    RevolutionSurface s = random_surface(rng);
    VertexGrid g = build_vertices(s);
    const int k = s.profile.layers() - 1;
    for (int n = 0; n < k; ++n) {
      const Quad q = face_quad(g, 0, n);
      CHECK(circumcircle_residual(q) < 1e-10 * face_diameter(q));
    }
  }
  const Quad warped = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(-0.2, 0.8, 0.3)};
  CHECK(circumcircle_residual(warped) > 1e-2);
}

TEST_CASE("curvatures are independent of the rotational index") {
  std::mt19937_64 rng(19);
  RevolutionSurface s = random_surface(rng);
  NormalProfile np = random_normals(s, rng);
  VertexGrid g = build_vertices(s);
  const int k = s.profile.layers() - 1;
  for (int n = 0; n < k; ++n) {
    FaceGeometry base = face_geometry_from_quads(face_quad(g, 0, n), normal_quad(np, s.l, 0, n));
    for (int m : {1, s.l / 2, s.l - 1}) {
      FaceGeometry fg = face_geometry_from_quads(face_quad(g, m, n), normal_quad(np, s.l, m, n));
      CHECK(std::abs(fg.K - base.K) < 1e-10 * std::max(1.0, std::abs(base.K)));
      CHECK(std::abs(fg.H - base.H) < 1e-10 * std::max(1.0, std::abs(base.H)));
    }
  }
}

TEST_CASE("normal profile validation catches a broken unit constraint") {
  NormalProfile np;
  np.a = {1.1};
  np.b = {0};
  CHECK(code_of([&] { np.validate(); }) == ErrorCode::InvalidArgument);
}
