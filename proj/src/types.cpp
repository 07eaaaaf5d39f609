#include "types.hpp"

#include <cmath>

namespace dricci {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroEdge: return "ZeroEdge";
    case ErrorCode::DegenerateBand: return "DegenerateBand";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonParallel: return "NonParallel";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::DegenerateStep: return "DegenerateStep";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::FitDomain: return "FitDomain";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, std::string(error_code_name(code)) + ": " + msg);
}

void ProfileCurve::validate() const {
  if (f.size() != h.size() || f.empty())
    fail(ErrorCode::InvalidArgument, "profile needs matching, nonempty f/h arrays");
  for (size_t n = 0; n < f.size(); ++n) {
    if (!std::isfinite(f[n]) || !std::isfinite(h[n]))
      fail(ErrorCode::InvalidArgument, "non-finite profile value at n=" + std::to_string(n));
    if (f[n] < 0)
      fail(ErrorCode::InvalidArgument, "negative radius f(" + std::to_string(n) + ")");
  }
  for (size_t n = 0; n + 1 < f.size(); ++n) {
    const double df = f[n + 1] - f[n];
    const double dh = h[n + 1] - h[n];
    if (df * df + dh * dh == 0)
      fail(ErrorCode::ZeroEdge, "repeated profile point at n=" + std::to_string(n));
  }
}

void NormalProfile::validate(double tol) const {
  if (a.size() != b.size() || a.empty())
    fail(ErrorCode::InvalidArgument, "normal profile needs matching a/b arrays");
  for (size_t n = 0; n < a.size(); ++n) {
    const double r = a[n] * a[n] + b[n] * b[n] - 1.0;
    if (std::abs(r) > tol)
      fail(ErrorCode::InvalidArgument,
           "normal not unit length at n=" + std::to_string(n) + " (|a^2+b^2-1|=" + std::to_string(std::abs(r)) + ")");
  }
}

void RevolutionSurface::validate() const {
  profile.validate();
  if (l < 3) fail(ErrorCode::InvalidArgument, "need at least 3 rotational divisions");
}

}  // namespace dricci
