#include "geometry.hpp"

#include <algorithm>
#include <cmath>

namespace dricci {

namespace {

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a.cross(b).dot(c);
}

}  // namespace

VertexGrid build_vertices(const RevolutionSurface& s) {
  s.validate();
  VertexGrid g;
  g.l = s.l;
  g.k = s.profile.layers() - 1;
  g.pts.resize(static_cast<size_t>(g.l) * (g.k + 1));
  for (int m = 0; m < g.l; ++m) {
    const double th = 2.0 * M_PI * m / g.l;
    const double ct = std::cos(th), st = std::sin(th);
    for (int n = 0; n <= g.k; ++n) {
      const double f = s.profile.f[n];
      g.pts[static_cast<size_t>(m) * (g.k + 1) + n] = Vec3(f * ct, f * st, s.profile.h[n]);
    }
  }
  return g;
}

Quad face_quad(const VertexGrid& g, int m, int n) {
  return {g.at(m, n), g.at(m + 1, n), g.at(m + 1, n + 1), g.at(m, n + 1)};
}

Quad normal_quad(const NormalProfile& np, int l, int m, int n) {
  auto nu = [&](int mm, int nn) {
    const double th = 2.0 * M_PI * mm / l;
    return Vec3(np.a[nn] * std::cos(th), np.a[nn] * std::sin(th), np.b[nn]);
  };
  return {nu(m, n), nu(m + 1, n), nu(m + 1, n + 1), nu(m, n + 1)};
}

void reflect_normal(double df, double dh, double& a, double& b) {
  const double d2 = df * df + dh * dh;
  if (d2 == 0) fail(ErrorCode::ZeroEdge, "zero-length profile edge");
  const double s = 2.0 * (a * df + b * dh) / d2;
  a -= s * df;
  b -= s * dh;
}

NormalProfile propagate_normal(const ProfileCurve& p, double a0, double b0) {
  p.validate();
  if (std::abs(a0 * a0 + b0 * b0 - 1.0) > 1e-12)
    fail(ErrorCode::InvalidArgument, "seed normal (a0,b0) must be unit length");
  const int k = p.layers() - 1;
  NormalProfile np;
  np.a.resize(k + 1);
  np.b.resize(k + 1);
  np.a[0] = a0;
  np.b[0] = b0;
  double a = a0, b = b0;
  for (int n = 0; n < k; ++n) {
    reflect_normal(p.f[n + 1] - p.f[n], p.h[n + 1] - p.h[n], a, b);
    np.a[n + 1] = a;
    np.b[n + 1] = b;
  }
  return np;
}

std::pair<Vec3, Vec3> face_derivatives(const Quad& q) {
  const Vec3 xu = 0.5 * (q[2] - q[1]) + 0.5 * (q[3] - q[0]);
  const Vec3 xv = 0.5 * (q[2] - q[3]) + 0.5 * (q[1] - q[0]);
  return {xu, xv};
}

Vec3 face_unit_normal(const Quad& q) {
  auto [xu, xv] = face_derivatives(q);
  const Vec3 c = xu.cross(xv);
  const double nrm = c.norm();
  if (nrm == 0) fail(ErrorCode::DegenerateBand, "face has no area");
  return c / nrm;
}

FaceGeometry face_geometry_from_quads(const Quad& fx, const Quad& fnu) {
  auto [xu, xv] = face_derivatives(fx);
  auto [nu, nv] = face_derivatives(fnu);
  Eigen::Matrix2d I, II;
  I << xu.dot(xu), xu.dot(xv), xv.dot(xu), xv.dot(xv);
  II << xu.dot(nu), xu.dot(nv), xv.dot(nu), xv.dot(nv);
  const double detI = I.determinant();
  if (detI <= 0)
    fail(ErrorCode::DegenerateBand, "first fundamental form is singular");
  const Eigen::Matrix2d S = I.inverse() * II;
  FaceGeometry fg;
  fg.g11 = I(0, 0);
  fg.g22 = I(1, 1);
  fg.g12 = I(0, 1);
  fg.K = S.determinant();
  fg.H = 0.5 * S.trace();
  fg.area = std::sqrt(detI);
  return fg;
}

FaceGeometry face_geometry(const RevolutionSurface& s, const NormalProfile& np, int n) {
  const int k = s.profile.layers() - 1;
  if (n < 0 || n >= k) fail(ErrorCode::InvalidArgument, "face index out of range");
  if (static_cast<int>(np.a.size()) != k + 1)
    fail(ErrorCode::InvalidArgument, "normal profile length does not match profile");
  const double f0 = s.profile.f[n], f1 = s.profile.f[n + 1];
  if (f0 == 0 && f1 == 0) fail(ErrorCode::DegenerateBand, "band with f(n)=f(n+1)=0 at n=" + std::to_string(n));
  const double df = f1 - f0;
  const double dh = s.profile.h[n + 1] - s.profile.h[n];
  const double cl = std::cos(M_PI / s.l), sl = std::sin(M_PI / s.l);

  FaceGeometry fg;
  fg.g11 = df * df * cl * cl + dh * dh;
  fg.g22 = (f1 + f0) * (f1 + f0) * sl * sl;
  fg.g12 = 0;
  fg.area = std::sqrt(fg.g11 * fg.g22);

  double fmax = 0;
  for (double f : s.profile.f) fmax = std::max(fmax, f);
  const double den = f1 * f1 - f0 * f0;
  const double eps_deg = 1e-9 * fmax * fmax;
  if (std::abs(den) < eps_deg) {
    // cylinder-like band: the difference quotients are 0/0, use S = I^{-1} II
    VertexGrid g = build_vertices(s);
    const FaceGeometry sg = face_geometry_from_quads(face_quad(g, 0, n), normal_quad(np, s.l, 0, n));
    fg.K = sg.K;
    fg.H = sg.H;
    return fg;
  }
  const double a0 = np.a[n], a1 = np.a[n + 1];
  fg.K = (a1 * a1 - a0 * a0) / den;
  fg.H = (f1 * a1 - f0 * a0) / den;
  return fg;
}

std::vector<Vec3> face_polygon(const Quad& q) {
  return {q[0], q[3], q[2], q[1]};
}

double polygon_area(const std::vector<Vec3>& P, const Vec3& N) {
  double acc = 0;
  const size_t n = P.size();
  for (size_t j = 0; j < n; ++j) acc += det3(P[j], P[(j + 1) % n], N);
  return 0.5 * acc;
}

double mixed_area(const std::vector<Vec3>& P, const std::vector<Vec3>& Q,
                  const Vec3& N, double eps_par) {
  if (P.size() != Q.size() || P.size() < 3)
    fail(ErrorCode::ShapeMismatch, "polygons must have equal vertex counts (>= 3)");
  const size_t n = P.size();
  for (size_t j = 0; j < n; ++j) {
    const Vec3 ep = P[(j + 1) % n] - P[j];
    const Vec3 eq = Q[(j + 1) % n] - Q[j];
    const double scale = ep.norm() * eq.norm();
    if (ep.cross(eq).norm() > eps_par * scale)
      fail(ErrorCode::NonParallel, "edge pair " + std::to_string(j) + " is not parallel");
  }
  double acc = 0;
  for (size_t j = 0; j < n; ++j) {
    const size_t j1 = (j + 1) % n;
    acc += det3(P[j], Q[j1], N) + det3(Q[j], P[j1], N);
  }
  return 0.25 * acc;
}

double steiner_check(const Quad& quad_x, const Quad& quad_nu, double t,
                     double K, double H) {
  const Vec3 N = face_unit_normal(quad_x);
  auto [xu, xv] = face_derivatives(quad_x);
  auto [nu, nv] = face_derivatives(quad_nu);
  const double ax = det3(xu, xv, N);
  const double at = det3(xu + t * nu, xv + t * nv, N);
  return std::abs(at - (1.0 + 2.0 * t * H + t * t * K) * ax);
}

double face_diameter(const Quad& q) {
  double d = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d = std::max(d, (q[i] - q[j]).norm());
  return d;
}

double circumcircle_residual(const Quad& q) {
  const double diam = face_diameter(q);
  if (diam == 0) return 0;
  std::vector<Vec3> pts;
  for (const Vec3& v : q) {
    bool dup = false;
    for (const Vec3& w : pts)
      if ((v - w).norm() <= 1e-13 * diam) { dup = true; break; }
    if (!dup) pts.push_back(v);
  }
  if (pts.size() < 3) return 0;
  // circumcenter c = p0 + alpha e1 + beta e2 in the plane of the first three
  const Vec3 e1 = pts[1] - pts[0];
  const Vec3 e2 = pts[2] - pts[0];
  Eigen::Matrix2d M;
  M << e1.dot(e1), e1.dot(e2), e2.dot(e1), e2.dot(e2);
  Eigen::Vector2d rhs(0.5 * e1.dot(e1), 0.5 * e2.dot(e2));
  const Eigen::Vector2d ab = M.fullPivLu().solve(rhs);
  const Vec3 c = pts[0] + ab(0) * e1 + ab(1) * e2;
  const double R = (pts[0] - c).norm();
  double worst = 0;
  for (const Vec3& v : pts) worst = std::max(worst, std::abs((v - c).norm() - R));
  return worst;
}

}  // namespace dricci
