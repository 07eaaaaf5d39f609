#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>
#include <vector>

#include "types.hpp"

namespace dricci {

using Vec3 = Eigen::Vector3d;

// Face corners in cyclic order i, j, k, l.
using Quad = std::array<Vec3, 4>;

// Vertices x(m,n) = (f(n)cos(2pi m/l), f(n)sin(2pi m/l), h(n)),
// m in [0,l) around the axis, n in [0,k] along the profile. Periodic in m.
struct VertexGrid {
  int l = 0;
  int k = 0;
  std::vector<Vec3> pts;  // m-major: pts[m*(k+1)+n]

  const Vec3& at(int m, int n) const {
    int r = m % l;
    if (r < 0) r += l;
    return pts[static_cast<size_t>(r) * (k + 1) + n];
  }
};

VertexGrid build_vertices(const RevolutionSurface& s);

// Face (m,n): corners x(m,n), x(m+1,n), x(m+1,n+1), x(m,n+1).
Quad face_quad(const VertexGrid& g, int m, int n);
// The corresponding face of the normals nu(m,n).
Quad normal_quad(const NormalProfile& np, int l, int m, int n);

// One reflection of (a,b) across the profile edge direction (df, dh).
void reflect_normal(double df, double dh, double& a, double& b);

NormalProfile propagate_normal(const ProfileCurve& p, double a0, double b0);

// Discrete partial derivatives of a face:
// x_u = (x_k - x_j)/2 + (x_l - x_i)/2, x_v = (x_k - x_l)/2 + (x_j - x_i)/2.
std::pair<Vec3, Vec3> face_derivatives(const Quad& q);

// Closed-form metric/curvatures of face n; falls back to the shape operator
// when f(n+1)^2 - f(n)^2 is degenerate (cylinder-like band).
FaceGeometry face_geometry(const RevolutionSurface& s, const NormalProfile& np, int n);

// Shape-operator route S = I^{-1} II assembled from the face and its normal
// face via face_derivatives; the fallback path and the consistency oracle.
FaceGeometry face_geometry_from_quads(const Quad& fx, const Quad& fnu);

Vec3 face_unit_normal(const Quad& q);

// Face corners as a polygon traversed counterclockwise around
// face_unit_normal; the quad's own i, j, k, l walk (m-edge first) runs
// clockwise, so this reverses it.
std::vector<Vec3> face_polygon(const Quad& q);

// Signed polygon area relative to N (shoelace / half sum of determinants).
double polygon_area(const std::vector<Vec3>& P, const Vec3& N);

// Mixed area of parallel polygons:
// A(P,Q) = 1/4 sum_j det(p_j, q_{j+1}, N) + det(q_j, p_{j+1}, N).
double mixed_area(const std::vector<Vec3>& P, const std::vector<Vec3>& Q,
                  const Vec3& N, double eps_par = 1e-9);

// |A(x + t nu) - (1 + 2tH + t^2 K) A(x)| with both sides evaluated through
// the determinant identities A = det(x_u, x_v, N).
double steiner_check(const Quad& quad_x, const Quad& quad_nu, double t,
                     double K, double H);

// Worst deviation of the face's distinct corners from their common
// circumcircle; 0 for degenerate (<3 distinct corners) faces.
double circumcircle_residual(const Quad& q);

double face_diameter(const Quad& q);

}  // namespace dricci
