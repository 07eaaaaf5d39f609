#include "compare.hpp"

#include <algorithm>
#include <cmath>

#include "io.hpp"

namespace dricci {

CompareReport run_compare(const CgcFamily& fam, double u_max, const std::vector<int>& levels) {
  fam.validate();
  if (!(u_max > 0)) fail(ErrorCode::InvalidArgument, "need u_max > 0");
  if (levels.size() < 2) fail(ErrorCode::InvalidArgument, "need at least two refinement levels");
  for (int M : levels)
    if (M < 2) fail(ErrorCode::InvalidArgument, "refinement levels must be >= 2");

  CompareReport report;
  for (int M : levels) {
    SampleGrid grid;
    if (fam.kind == FamilyKind::SinhNegative) {
      for (int n = 0; n <= M; ++n) grid.u.push_back(u_max * (M - n) / M);
    } else {
      grid = linspace_grid(0, u_max, M);
    }
    const FamilySurface fs = make_family(fam, grid);

    CompareLevel level;
    level.M = M;
    const auto [f0, h0] = smooth_reference(fam, grid.u[0]);
    (void)f0;
    for (int n = 0; n <= M; ++n) {
      CompareRow row;
      row.u = grid.u[n];
      std::tie(row.f_smooth, row.h_smooth) = smooth_reference(fam, row.u);
      row.f_discrete = fs.profile.f[n];
      row.h_discrete = fs.profile.h[n];
      row.gap = std::max(std::abs(row.f_discrete - row.f_smooth),
                         std::abs((row.h_discrete - fs.profile.h[0]) - (row.h_smooth - h0)));
      level.max_gap = std::max(level.max_gap, row.gap);
      level.rows.push_back(row);
    }
    report.levels.push_back(std::move(level));
  }

  // least-squares fit of log(max_gap) against log(M)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(report.levels.size());
  for (const auto& level : report.levels) {
    const double x = std::log(static_cast<double>(level.M));
    const double y = std::log(std::max(level.max_gap, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.order = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  return report;
}

void write_compare_csv(std::ostream& out, const CompareReport& report) {
  out << "M,u,f_smooth,h_smooth,f_discrete,h_discrete,gap\n";
  for (const auto& level : report.levels)
    for (const auto& row : level.rows)
      out << level.M << ',' << format_g17(row.u) << ',' << format_g17(row.f_smooth) << ','
          << format_g17(row.h_smooth) << ',' << format_g17(row.f_discrete) << ','
          << format_g17(row.h_discrete) << ',' << format_g17(row.gap) << "\n";
  out << "# order," << format_g17(report.order) << "\n";
}

}  // namespace dricci
