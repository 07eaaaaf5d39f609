#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "checks.hpp"
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

const CheckResult* find_result(const CheckReport& report, const std::string& invariant) {
  for (const auto& r : report.results)
    if (r.invariant == invariant) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("the randomized suite passes and covers every invariant") {
  CheckReport report = run_check(42, 5);
  CHECK(report.passed());
  CHECK(report.seed == 42);
  CHECK(report.trials == 5);
  REQUIRE(report.results.size() == 13);
  for (const char* name :
       {"unit-normals", "face-circularity", "curvature-consistency", "steiner", "mixed-area",
        "rotation-independence", "cgc-constancy", "catenoid-minimality", "h-consistency",
        "normal-consistency", "rhs-agreement", "jacobian-fd", "stationarity"}) {
    const CheckResult* r = find_result(report, name);
    REQUIRE(r != nullptr);
    CHECK(r->pass());
    CHECK(r->cases > 0);
    CHECK(r->detail.empty());
  }
  CHECK(report.summary().find("overall: PASS") != std::string::npos);
}

TEST_CASE("zero trials pass vacuously") {
  CheckReport report = run_check(1, 0);
  CHECK(report.passed());
  for (const auto& r : report.results) CHECK(r.cases == 0);
}

TEST_CASE("repeated runs with one seed produce identical summaries") {
  CHECK(run_check(123456789, 3).summary() == run_check(123456789, 3).summary());
}

TEST_CASE("a corrupted normal profile trips the unit-normal invariant") {
  RevolutionSurface s;
  s.profile.f = {1.0, 0.8, 0.5};
  s.profile.h = {0.0, 0.4, 0.9};
  s.l = 12;
  NormalProfile np = propagate_normal(s.profile, 1, 0);
  np.a[1] = 1.1;  // no longer unit length

  std::mt19937_64 rng(9);
  CheckTolerances tols;
  CheckReport report;
  check_surface_suite(s, np, rng, tols, report);
  CHECK_FALSE(report.passed());
  const CheckResult* r = find_result(report, "unit-normals");
  REQUIRE(r != nullptr);
  CHECK_FALSE(r->pass());
  CHECK(report.summary().find("overall: FAIL") != std::string::npos);
}

TEST_CASE("tolerances must be positive") {
  CheckTolerances tols;
  tols.steiner = 0;
  CHECK(code_of([&] { run_check(42, 1, tols); }) == ErrorCode::InvalidArgument);
  tols.steiner = -1e-10;
  CHECK(code_of([&] { tols.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("tightening a tolerance beyond reach turns the report into a failure") {
  CheckTolerances tols;
  tols.curvature_consistency = 1e-18;  // below double rounding on random faces
  CheckReport report = run_check(7, 5, tols);
  CHECK_FALSE(report.passed());
  const CheckResult* r = find_result(report, "curvature-consistency");
  REQUIRE(r != nullptr);
  CHECK_FALSE(r->pass());
}
