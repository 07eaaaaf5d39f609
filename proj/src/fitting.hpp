#pragma once

#include <vector>

#include "families.hpp"
#include "flow.hpp"

namespace dricci {

// Result of matching a flow state against the positive constant-curvature
// family: K = c on every band, profile f(n) = p cos(sqrt(c) u_n), heights
// rebuilt from the family's telescoping sum.
struct CgcFit {
  double c = 0;                // fitted curvature, r(t)/2
  double p = 0;                // fitted amplitude, f(0)
  std::vector<double> u;       // recovered smooth parameters, u_0 = 0
  std::vector<double> h_pred;  // family heights on the recovered grid
  double h_err = 0;            // max |h_state - h_pred|
};

CgcFit fit_cgc(const FlowState& state);

// Negative-curvature analogue. Cusp-type states are matched against the
// cosh profile, cone-type states against the sinh profile. `param` is the
// family parameter (p resp. q) of the unit-curvature surface obtained by
// rescaling the state with mu = sqrt(-c); `u` lives on that unit scale and
// `h_pred` is mapped back to the state's scale.
struct NegativeFit {
  FamilyKind kind = FamilyKind::CoshNegative;
  double c = 0;
  double param = 0;
  std::vector<double> u;
  std::vector<double> h_pred;
  double h_err = 0;
};

NegativeFit negative_fit(const FlowState& state);

}  // namespace dricci
