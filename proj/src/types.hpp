#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dricci {

enum class ErrorCode {
  InvalidArgument,
  ZeroEdge,
  DegenerateBand,
  ShapeMismatch,
  NonParallel,
  DomainViolation,
  DegenerateStep,
  SingularJacobian,
  StepFailure,
  FitDomain,
  DivisionByZero,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg);

// Generating curve of a surface of revolution: radius f(n) >= 0 and height
// h(n), n = 0..k. Consecutive points must be distinct.
struct ProfileCurve {
  std::vector<double> f;
  std::vector<double> h;

  int layers() const { return static_cast<int>(f.size()); }  // k+1
  void validate() const;
};

// Rotationally symmetric unit normal (a(n), b(n)); nu(m,n) points radially
// with component a(n) and vertically with component b(n).
struct NormalProfile {
  std::vector<double> a;
  std::vector<double> b;

  void validate(double tol = 1e-12) const;
};

struct RevolutionSurface {
  ProfileCurve profile;
  int l = 3;  // rotational divisions, >= 3

  void validate() const;
};

// Per-face quantities; faces are indexed by their lower layer n in [0, k-1].
// g12 = 0 for surfaces of revolution.
struct FaceGeometry {
  double g11 = 0;
  double g22 = 0;
  double g12 = 0;
  double K = 0;
  double H = 0;
  double area = 0;  // mixed area A(x) = sqrt(g11*g22)
};

}  // namespace dricci
