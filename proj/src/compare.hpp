#pragma once

#include <ostream>
#include <vector>

#include "families.hpp"

namespace dricci {

struct CompareRow {
  double u = 0;
  double f_smooth = 0, h_smooth = 0;
  double f_discrete = 0, h_discrete = 0;
  double gap = 0;
};

struct CompareLevel {
  int M = 0;  // number of subdivisions; M+1 samples
  std::vector<CompareRow> rows;
  double max_gap = 0;
};

struct CompareReport {
  std::vector<CompareLevel> levels;
  double order = 0;  // least-squares slope of -log(max_gap) vs log(M)
};

// Discrete family vs its smooth reference on [0, u_max], refined over the
// given subdivision counts. Heights are compared with both anchors at the
// grid's first sample, so decreasing (sinh-type) grids work unchanged.
CompareReport run_compare(const CgcFamily& fam, double u_max, const std::vector<int>& levels);

// Columns: M, u, f_smooth, h_smooth, f_discrete, h_discrete, gap; a trailing
// comment line carries the order estimate.
void write_compare_csv(std::ostream& out, const CompareReport& report);

}  // namespace dricci
