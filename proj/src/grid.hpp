#pragma once

#include <string>
#include <vector>

#include "types.hpp"

namespace dricci {

// Strictly monotonic parameter samples u_{n_min}..u_{n_max} with index 0
// present; decreasing grids are allowed (the sinh-type family needs them).
struct SampleGrid {
  std::vector<double> u;
  int n_min = 0;

  int count() const { return static_cast<int>(u.size()); }
  int n_max() const { return n_min + count() - 1; }
  double at(int n) const { return u[static_cast<size_t>(n - n_min)]; }
  bool increasing() const { return u.size() < 2 || u[1] > u[0]; }
  void validate() const;
};

SampleGrid linspace_grid(double a, double b, int m);  // m+1 samples, n_min = 0

// Grid mini-language. Three forms:
//   [0, 0.26, 0.52]              explicit list, indices start at 0
//   linspace(0, 1.5707, 12)      13 evenly spaced samples
//   pi*n/12 : n = -6 .. 6        expression in n over an integer range
// Expressions accept + - * / ^, parentheses, numbers, n, pi, and the usual
// trig/hyperbolic/exp/log/sqrt/abs functions. Nonmonotonic results and
// ranges not containing n = 0 are rejected.
SampleGrid parse_grid(const std::string& text);

// Evaluate a single arithmetic expression with n bound to the given value.
double eval_grid_expr(const std::string& expr, double n);

}  // namespace dricci
