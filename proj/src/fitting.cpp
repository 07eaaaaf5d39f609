#include "fitting.hpp"

#include <algorithm>
#include <cmath>

namespace dricci {

namespace {

constexpr double kRatioTol = 1e-12;

double max_height_error(const FlowState& state, const std::vector<double>& h_pred) {
  const ProfileCurve prof = state.profile();
  double err = 0;
  for (size_t n = 0; n < h_pred.size(); ++n)
    err = std::max(err, std::abs(prof.h[n] - h_pred[n]));
  return err;
}

}  // namespace

CgcFit fit_cgc(const FlowState& state) {
  const int k = state.bands();
  CgcFit fit;
  fit.c = r_of_t(state) / 2;
  if (!(fit.c > 0))
    fail(ErrorCode::FitDomain, "mean curvature ratio is not positive");
  fit.p = state.f[0];
  const double sc = std::sqrt(fit.c);
  fit.u.resize(k + 1);
  for (int n = 0; n <= k; ++n) {
    double ratio = state.f[n] / fit.p;
    if (ratio > 1 + kRatioTol || ratio < -1 - kRatioTol)
      fail(ErrorCode::FitDomain, "f(" + std::to_string(n) + ")/f(0) outside [-1, 1]");
    ratio = std::clamp(ratio, -1.0, 1.0);
    fit.u[n] = std::acos(ratio) / sc;
  }
  for (int n = 0; n < k; ++n)
    if (!(fit.u[n + 1] > fit.u[n]))
      fail(ErrorCode::FitDomain, "recovered parameters are not strictly monotone");
  const FamilySurface fs = cgc_positive(fit.p, fit.c, SampleGrid{fit.u, 0});
  fit.h_pred = fs.profile.h;
  fit.h_err = max_height_error(state, fit.h_pred);
  return fit;
}

NegativeFit negative_fit(const FlowState& state) {
  const int k = state.bands();
  NegativeFit fit;
  fit.c = r_of_t(state) / 2;
  if (!(fit.c < 0))
    fail(ErrorCode::FitDomain, "mean curvature ratio is not negative");
  const double mu = std::sqrt(-fit.c);
  fit.u.resize(k + 1);
  CgcFamily fam;
  if (bc_is_cusp(state.bc)) {
    fit.kind = FamilyKind::CoshNegative;
    fit.param = mu * state.f[0];
    for (int n = 0; n <= k; ++n) {
      double ratio = state.f[n] / state.f[0];
      if (ratio < 1 - kRatioTol)
        fail(ErrorCode::FitDomain, "f(" + std::to_string(n) + ")/f(0) below 1");
      fit.u[n] = std::acosh(std::max(ratio, 1.0));
    }
    for (int n = 0; n < k; ++n)
      if (!(fit.u[n + 1] > fit.u[n]))
        fail(ErrorCode::FitDomain, "recovered parameters are not strictly monotone");
    fam.kind = FamilyKind::CoshNegative;
    fam.p = fit.param;
  } else {
    fit.kind = FamilyKind::SinhNegative;
    const double arg = 1 - mu * mu * state.f[0] * state.f[0];
    if (arg <= kRatioTol)
      fail(ErrorCode::FitDomain, "rescaled f(0) leaves no room for the sinh profile");
    fit.param = std::sqrt(arg);
    for (int n = 0; n <= k; ++n)
      fit.u[n] = std::asinh(mu * state.f[n] / fit.param);
    for (int n = 0; n < k; ++n)
      if (!(fit.u[n + 1] < fit.u[n]))
        fail(ErrorCode::FitDomain, "recovered parameters are not strictly monotone");
    fam.kind = FamilyKind::SinhNegative;
    fam.q = fit.param;
  }
  const FamilySurface fs = cgc_negative(fam, SampleGrid{fit.u, 0});
  fit.h_pred.resize(k + 1);
  for (int n = 0; n <= k; ++n) fit.h_pred[n] = fs.profile.h[n] / mu;
  fit.h_err = max_height_error(state, fit.h_pred);
  return fit;
}

}  // namespace dricci
