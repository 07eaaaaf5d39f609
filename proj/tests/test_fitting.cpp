#include "doctest.h"

#include <cmath>
#include <functional>
#include <string>

#include "families.hpp"
#include "fitting.hpp"
#include "flow.hpp"
#include "grid.hpp"
#include "io.hpp"
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

}  // namespace

TEST_CASE("positive fit round trips exact family states") {
  // Spindle closing on the axis: a cone-type state.
  FlowState spindle = family_state(cgc_positive(0.9, 1.0, linspace_grid(0, M_PI / 2, 6)), 24,
                                   FlowBc::PosCone);
  CgcFit fit = fit_cgc(spindle);
  CHECK(fit.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.p == doctest::Approx(0.9).epsilon(1e-14));
  for (int n = 0; n <= 6; ++n)
    CHECK(fit.u[n] == doctest::Approx(M_PI / 2 * n / 6).epsilon(1e-10));
  CHECK(fit.h_err < 1e-12);

  // Bulge ending on the vertical normal: a cusp-type state.
  FlowState bulge = family_state(
      cgc_positive(1.2, 1.0, linspace_grid(0, std::asin(1 / 1.2), 6)), 24, FlowBc::PosCusp);
  fit = fit_cgc(bulge);
  CHECK(fit.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.p == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(fit.h_err < 1e-12);
}

TEST_CASE("positive fit rejects profiles outside the cosine family") {
  FlowState widening;
  widening.f = {0.5, 0.8, 0.0};  // f(1)/f(0) > 1: no cosine matches
  widening.dh = {0.3, 0.4};
  widening.bc = FlowBc::PosCone;
  widening.l = 24;
  CHECK(code_of([&] { fit_cgc(widening); }) == ErrorCode::FitDomain);

  // Negative mean curvature ratio is the other way out of the domain.
  CgcFamily fam;
  fam.kind = FamilyKind::CoshNegative;
  fam.p = 1.0;
  FlowState neg = family_state(
      cgc_negative(fam, parse_grid("log(1 + sqrt(2)) / 4 * n : n = 0 .. 4")), 24,
      FlowBc::NegCusp);
  CHECK(code_of([&] { fit_cgc(neg); }) == ErrorCode::FitDomain);
}

TEST_CASE("negative fit round trips both hyperbolic families") {
  CgcFamily cosh_fam;
  cosh_fam.kind = FamilyKind::CoshNegative;
  cosh_fam.p = 1.0;
  FlowState cusp = family_state(
      cgc_negative(cosh_fam, parse_grid("log(1 + sqrt(2)) / 4 * n : n = 0 .. 4")), 24,
      FlowBc::NegCusp);
  NegativeFit nf = negative_fit(cusp);
  CHECK(nf.kind == FamilyKind::CoshNegative);
  CHECK(nf.c == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(nf.param == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nf.u[0] == 0.0);
  CHECK(nf.h_err < 1e-12);

  // The cone-type fit reads q off the gauge a(0) = 0, so the state starts on
  // the vertical-tangent boundary q cosh u_0 = 1; recovering u_0 there costs
  // sqrt(ulp), which caps the achievable round-trip error near 1e-9.
  CgcFamily sinh_fam;
  sinh_fam.kind = FamilyKind::SinhNegative;
  sinh_fam.q = 0.5;
  FlowState cone = family_state(
      cgc_negative(sinh_fam, parse_grid("(1 - n/4) * acosh(2) : n = 0 .. 4")), 24,
      FlowBc::NegCone);
  nf = negative_fit(cone);
  CHECK(nf.kind == FamilyKind::SinhNegative);
  CHECK(nf.c == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(nf.param == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(nf.u.back() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(nf.h_err < 1e-8);
}

TEST_CASE("negative fit rejects positively curved input") {
  FlowState sphere = sphere_state(4, 24, FlowBc::PosCusp);
  CHECK(code_of([&] { negative_fit(sphere); }) == ErrorCode::FitDomain);
}

TEST_CASE("fit reports serialize with the family's own parameter key") {
  FlowState spindle = family_state(cgc_positive(0.9, 1.0, linspace_grid(0, M_PI / 2, 6)), 24,
                                   FlowBc::PosCone);
  const std::string pos = fit_to_json(fit_cgc(spindle));
  CHECK(pos.find("\"c\":") != std::string::npos);
  CHECK(pos.find("\"p\":") != std::string::npos);
  CHECK(pos.find("\"u\":") != std::string::npos);
  CHECK(pos.find("\"h_err\":") != std::string::npos);
  CHECK(pos.find("\"q\":") == std::string::npos);

  CgcFamily sinh_fam;
  sinh_fam.kind = FamilyKind::SinhNegative;
  sinh_fam.q = 0.5;
  FlowState cone = family_state(
      cgc_negative(sinh_fam, parse_grid("(1 - n/4) * acosh(2) : n = 0 .. 4")), 24,
      FlowBc::NegCone);
  const std::string neg = fit_to_json(negative_fit(cone));
  CHECK(neg.find("\"q\":") != std::string::npos);
  CHECK(neg.find("\"p\":") == std::string::npos);

  // The dispatching report picks the fit family from the sign of r.
  CHECK(fit_report_json(spindle) == pos);
  CHECK(fit_report_json(cone) == neg);
}
