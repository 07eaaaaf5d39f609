#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "types.hpp"

namespace dricci {

// One tolerance per named invariant; overridable from the CLI.
struct CheckTolerances {
  double unit_normal = 1e-12;
  double circularity = 1e-10;            // relative to face diameter
  double curvature_consistency = 1e-9;   // closed forms vs shape operator
  double steiner = 1e-10;
  double mixed_area = 1e-10;
  double rotation_independence = 1e-10;
  double cgc_constancy = 1e-10;
  double catenoid_minimality = 1e-10;
  double h_consistency = 1e-12;
  double normal_consistency = 1e-10;
  double rhs_agreement = 1e-10;
  double jacobian_fd = 1e-6;
  double stationarity = 1e-10;

  void validate() const;
};

struct CheckResult {
  std::string invariant;
  double tolerance = 0;
  double worst = 0;
  long cases = 0;
  std::string detail;  // set when a case aborted with an error

  bool pass() const { return worst <= tolerance; }
};

struct CheckReport {
  uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckResult> results;

  CheckResult& entry(const std::string& invariant, double tolerance);
  void observe(const std::string& invariant, double tolerance, double value);
  void observe_failure(const std::string& invariant, double tolerance, const std::string& what);
  bool passed() const;
  std::string summary() const;
};

// Invariant suites over explicit inputs. Exposed so deliberately corrupted
// fixtures can be fed in as negative controls.
void check_surface_suite(const RevolutionSurface& s, const NormalProfile& np,
                         std::mt19937_64& rng, const CheckTolerances& tols, CheckReport& report);
void check_family_suite(std::mt19937_64& rng, const CheckTolerances& tols, CheckReport& report);
void check_flow_suite(std::mt19937_64& rng, const CheckTolerances& tols, CheckReport& report);

// Randomized run over all suites; trials = 0 passes vacuously.
CheckReport run_check(uint64_t seed, int trials, const CheckTolerances& tols = {});

}  // namespace dricci
