#pragma once

#include <string>
#include <utility>

#include "grid.hpp"
#include "types.hpp"

namespace dricci {

enum class FamilyKind {
  SpherePositive,  // K = c > 0, f = p cos(sqrt(c) u)
  Pseudosphere,    // K = -1, f = 1/cosh u
  CoshNegative,    // K = -1, f = p cosh u
  SinhNegative,    // K = -1, f = q sinh u, decreasing grid
  Catenoid,        // H = 0, f = cosh u
  Delaunay,        // constant H, parallel surface of SpherePositive at eps/sqrt(c)
};

const char* family_name(FamilyKind kind);
FamilyKind family_from_name(const std::string& name);

struct CgcFamily {
  FamilyKind kind = FamilyKind::SpherePositive;
  double p = 1.0;   // SpherePositive, CoshNegative, Delaunay
  double q = 0.5;   // SinhNegative, in (0,1)
  double c = 1.0;   // curvature scale for the positive families
  int eps = +1;     // Delaunay offset sign

  void validate() const;
};

struct FamilySurface {
  ProfileCurve profile;   // reindexed so grid index n_min maps to layer 0
  NormalProfile normal;
  SampleGrid grid;
};

// Positive constant Gaussian curvature K = c:
// f(n) = p cos(sqrt(c) u_n), h by the telescoping closed-form sum (mirrored
// for n < 0), normals (a,b) = (sqrt(1 - p^2 c sin^2), p sqrt(c) sin).
FamilySurface cgc_positive(double p, double c, const SampleGrid& grid);

// The three K = -1 families (pseudosphere / cosh / sinh types).
FamilySurface cgc_negative(const CgcFamily& fam, const SampleGrid& grid);

// Discrete catenoid: f = cosh u, h increments sinh(u_i - u_{i-1}); H = 0.
FamilySurface catenoid(const SampleGrid& grid);

// Parallel surface of cgc_positive at offset eps/sqrt(c); constant mean
// curvature H = eps sqrt(c)/2. The normal profile is inherited.
FamilySurface delaunay(double p, double c, int eps, const SampleGrid& grid);

FamilySurface make_family(const CgcFamily& fam, const SampleGrid& grid);

// Smooth reference profile (f(u), h(u)); h by quadrature of the arclength
// integrand where no closed form exists (abs tolerance 1e-12).
std::pair<double, double> smooth_reference(const CgcFamily& fam, double u);

}  // namespace dricci
