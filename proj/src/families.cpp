#include "families.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

namespace dricci {

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::SpherePositive: return "sphere-positive";
    case FamilyKind::Pseudosphere: return "pseudosphere";
    case FamilyKind::CoshNegative: return "cosh-negative";
    case FamilyKind::SinhNegative: return "sinh-negative";
    case FamilyKind::Catenoid: return "catenoid";
    case FamilyKind::Delaunay: return "delaunay";
  }
  return "unknown";
}

FamilyKind family_from_name(const std::string& name) {
  for (FamilyKind k : {FamilyKind::SpherePositive, FamilyKind::Pseudosphere,
                       FamilyKind::CoshNegative, FamilyKind::SinhNegative,
                       FamilyKind::Catenoid, FamilyKind::Delaunay})
    if (name == family_name(k)) return k;
  fail(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

void CgcFamily::validate() const {
  switch (kind) {
    case FamilyKind::SpherePositive:
    case FamilyKind::Delaunay:
      if (p <= 0) fail(ErrorCode::InvalidArgument, "need p > 0");
      if (c <= 0) fail(ErrorCode::InvalidArgument, "need c > 0");
      if (kind == FamilyKind::Delaunay && eps * eps != 1)
        fail(ErrorCode::InvalidArgument, "need eps in {+1,-1}");
      break;
    case FamilyKind::CoshNegative:
      if (p <= 0) fail(ErrorCode::InvalidArgument, "need p > 0");
      break;
    case FamilyKind::SinhNegative:
      if (q <= 0 || q >= 1) fail(ErrorCode::InvalidArgument, "need 0 < q < 1");
      break;
    case FamilyKind::Pseudosphere:
    case FamilyKind::Catenoid:
      break;
  }
}

namespace {

// Square root with a tiny negative guard so grids may touch the domain
// boundary (e.g. u_n = arcsin(1/(p sqrt(c))) exactly) without spurious errors.
double sqrt_domain(double arg, const std::string& what) {
  if (arg < -1e-12) fail(ErrorCode::DomainViolation, what);
  return std::sqrt(std::max(arg, 0.0));
}

struct FamilyEval {
  std::function<double(int)> f, a, b;
  std::function<double(int)> step;  // h(i) - h(i-1) for i in (n_min, n_max]
};

// Evaluate the closed forms on the grid, accumulating h from h(0) = 0 in
// both directions (the negative-n extension mirrors the telescoping sum).
FamilySurface assemble(const FamilyEval& ev, const SampleGrid& grid) {
  grid.validate();
  const int count = grid.count();
  const int i0 = -grid.n_min;  // array position of grid index 0

  FamilySurface out;
  out.grid = grid;
  out.profile.f.resize(count);
  out.profile.h.resize(count);
  out.normal.a.resize(count);
  out.normal.b.resize(count);
  for (int i = 0; i < count; ++i) {
    const int n = grid.n_min + i;
    out.profile.f[i] = ev.f(n);
    out.normal.a[i] = ev.a(n);
    out.normal.b[i] = ev.b(n);
  }
  out.profile.h[i0] = 0;
  for (int i = i0 + 1; i < count; ++i)
    out.profile.h[i] = out.profile.h[i - 1] + ev.step(grid.n_min + i);
  for (int i = i0 - 1; i >= 0; --i)
    out.profile.h[i] = out.profile.h[i + 1] - ev.step(grid.n_min + i + 1);

  out.profile.validate();
  out.normal.validate();
  return out;
}

}  // namespace

FamilySurface cgc_positive(double p, double c, const SampleGrid& grid) {
  if (p <= 0 || c <= 0) fail(ErrorCode::InvalidArgument, "need p > 0 and c > 0");
  const double rc = std::sqrt(c);
  auto fv = [=](int n) {
    const double w = rc * grid.at(n);
    if (std::abs(w) > M_PI / 2 + 1e-12)
      fail(ErrorCode::DomainViolation,
           "sqrt(c) u_n out of [-pi/2, pi/2] at n=" + std::to_string(n));
    return p * std::cos(w);
  };
  auto av = [=](int n) {
    const double s = std::sin(rc * grid.at(n));
    return sqrt_domain(1.0 - p * p * c * s * s,
                       "1 - p^2 c sin^2(sqrt(c) u_n) < 0 at n=" + std::to_string(n));
  };
  auto bv = [=](int n) { return p * rc * std::sin(rc * grid.at(n)); };
  auto step = [=](int i) {
    const double da = av(i) - av(i - 1);
    if (da == 0)
      fail(ErrorCode::DegenerateStep,
           "sin^2(sqrt(c) u) repeats between n=" + std::to_string(i - 1) + " and n=" + std::to_string(i));
    return (bv(i) - bv(i - 1)) * (fv(i) - fv(i - 1)) / da;
  };
  return assemble({fv, av, bv, step}, grid);
}

FamilySurface cgc_negative(const CgcFamily& fam, const SampleGrid& grid) {
  fam.validate();
  switch (fam.kind) {
    case FamilyKind::Pseudosphere: {
      auto fv = [&](int n) { return 1.0 / std::cosh(grid.at(n)); };
      auto av = [&](int n) { return std::tanh(grid.at(n)); };
      auto bv = [&](int n) { return 1.0 / std::cosh(grid.at(n)); };
      auto step = [&](int i) {
        const double ci = std::cosh(grid.at(i)), cp = std::cosh(grid.at(i - 1));
        const double d = ci - cp;
        return d * d / (std::sinh(grid.at(i) - grid.at(i - 1)) * ci * cp);
      };
      return assemble({fv, av, bv, step}, grid);
    }
    case FamilyKind::CoshNegative: {
      const double p = fam.p;
      auto fv = [=, &grid](int n) { return p * std::cosh(grid.at(n)); };
      auto av = [=, &grid](int n) {
        const double s = std::sinh(grid.at(n));
        return sqrt_domain(1.0 - p * p * s * s,
                           "1 - p^2 sinh^2 u_n < 0 at n=" + std::to_string(n));
      };
      auto bv = [=, &grid](int n) { return -p * std::sinh(grid.at(n)); };
      auto step = [=, &grid](int i) {
        const double da = av(i) - av(i - 1);
        if (da == 0)
          fail(ErrorCode::DegenerateStep, "sinh^2 u repeats between n=" + std::to_string(i - 1) +
                                              " and n=" + std::to_string(i));
        return (bv(i) - bv(i - 1)) * (fv(i) - fv(i - 1)) / da;
      };
      return assemble({fv, av, bv, step}, grid);
    }
    case FamilyKind::SinhNegative: {
      if (grid.increasing())
        fail(ErrorCode::InvalidArgument, "sinh-type family needs a decreasing grid (u_0 > u_1 > ...)");
      const double q = fam.q;
      auto fv = [=, &grid](int n) {
        const double v = q * std::sinh(grid.at(n));
        if (v < -1e-12) fail(ErrorCode::DomainViolation, "u_n < 0 gives negative radius at n=" + std::to_string(n));
        return std::max(v, 0.0);
      };
      auto av = [=, &grid](int n) {
        const double ch = std::cosh(grid.at(n));
        return sqrt_domain(1.0 - q * q * ch * ch,
                           "1 - q^2 cosh^2 u_n < 0 at n=" + std::to_string(n));
      };
      auto bv = [=, &grid](int n) { return q * std::cosh(grid.at(n)); };
      auto step = [=, &grid](int i) {
        const double da = av(i) - av(i - 1);
        if (da == 0)
          fail(ErrorCode::DegenerateStep, "cosh^2 u repeats between n=" + std::to_string(i - 1) +
                                              " and n=" + std::to_string(i));
        return (bv(i) - bv(i - 1)) * (fv(i) - fv(i - 1)) / da;
      };
      return assemble({fv, av, bv, step}, grid);
    }
    default:
      fail(ErrorCode::InvalidArgument, "cgc_negative expects a K=-1 family");
  }
}

FamilySurface catenoid(const SampleGrid& grid) {
  if (!grid.increasing())
    fail(ErrorCode::InvalidArgument, "catenoid needs a strictly increasing grid");
  auto fv = [&](int n) { return std::cosh(grid.at(n)); };
  auto av = [&](int n) { return 1.0 / std::cosh(grid.at(n)); };
  auto bv = [&](int n) { return -std::tanh(grid.at(n)); };
  auto step = [&](int i) {
    const double du = grid.at(i) - grid.at(i - 1);
    if (du == 0) fail(ErrorCode::DegenerateStep, "repeated grid value at n=" + std::to_string(i));
    return std::sinh(du);
  };
  return assemble({fv, av, bv, step}, grid);
}

FamilySurface delaunay(double p, double c, int eps, const SampleGrid& grid) {
  if (eps * eps != 1) fail(ErrorCode::InvalidArgument, "need eps in {+1,-1}");
  FamilySurface base = cgc_positive(p, c, grid);
  const double t = eps / std::sqrt(c);
  const int count = grid.count();
  for (int i = 0; i < count; ++i) {
    base.profile.f[i] += t * base.normal.a[i];
    base.profile.h[i] += t * base.normal.b[i];
  }
  // For the spindle case (p sqrt(c) < 1) the eps = -1 offset lies entirely on
  // the other side of the axis; negating (f, a) jointly gives the same
  // surface rotated by pi and keeps the radius nonnegative. A mixed-sign
  // offset cannot occur for these profiles.
  double fmin = base.profile.f[0], fmax = base.profile.f[0];
  for (double v : base.profile.f) {
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  const double tol = 1e-12 * (p + 1.0 / std::sqrt(c));
  if (fmax <= tol && fmin >= -tol)
    fail(ErrorCode::DomainViolation, "parallel surface collapses to a point (p sqrt(c) = 1, eps = -1)");
  if (fmax <= tol) {
    for (int i = 0; i < count; ++i) {
      base.profile.f[i] = -base.profile.f[i];
      base.normal.a[i] = -base.normal.a[i];
    }
  } else if (fmin < -tol) {
    fail(ErrorCode::DomainViolation, "offset profile crosses the axis");
  }
  for (double& v : base.profile.f) v = std::max(v, 0.0);
  base.profile.validate();
  return base;
}

FamilySurface make_family(const CgcFamily& fam, const SampleGrid& grid) {
  fam.validate();
  switch (fam.kind) {
    case FamilyKind::SpherePositive: return cgc_positive(fam.p, fam.c, grid);
    case FamilyKind::Pseudosphere:
    case FamilyKind::CoshNegative:
    case FamilyKind::SinhNegative: return cgc_negative(fam, grid);
    case FamilyKind::Catenoid: return catenoid(grid);
    case FamilyKind::Delaunay: return delaunay(fam.p, fam.c, fam.eps, grid);
  }
  fail(ErrorCode::InvalidArgument, "unknown family kind");
}

namespace {

double gk_integrate(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  // Substitute onto [0,1]; the error estimate degrades badly on very short
  // intervals even when the actual error is far below target.
  const double w = b - a;
  auto g = [&](double t) { return w * f(a + w * t); };
  double err = 0;
  const double v = gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 15, 1e-14, &err);
  if (err > 1e-12)
    fail(ErrorCode::InvalidArgument, "quadrature error estimate above 1e-12");
  return v;
}

// Arclength height integral from 0 to u of an even integrand sqrt(arg(s)).
double height_integral(const std::function<double(double)>& arg, double u) {
  const double s = u < 0 ? -1.0 : 1.0;
  const double hi = std::abs(u);
  if (hi == 0) return 0;
  return s * gk_integrate([&](double x) { return std::sqrt(std::max(arg(x), 0.0)); }, 0, hi);
}

}  // namespace

std::pair<double, double> smooth_reference(const CgcFamily& fam, double u) {
  fam.validate();
  switch (fam.kind) {
    case FamilyKind::SpherePositive: {
      const double p = fam.p, c = fam.c, rc = std::sqrt(c);
      const double peak = rc * std::abs(u) >= M_PI / 2
                              ? p * p * c
                              : p * p * c * std::sin(rc * std::abs(u)) * std::sin(rc * std::abs(u));
      if (peak > 1 + 1e-12)
        fail(ErrorCode::DomainViolation, "1 - p^2 c sin^2(sqrt(c) s) < 0 on [0, u]");
      const double f = p * std::cos(rc * u);
      const double h = height_integral(
          [&](double s) { return 1.0 - p * p * c * std::sin(rc * s) * std::sin(rc * s); }, u);
      return {f, h};
    }
    case FamilyKind::Pseudosphere:
      return {1.0 / std::cosh(u), u - std::tanh(u)};
    case FamilyKind::CoshNegative: {
      const double p = fam.p;
      const double sh = std::sinh(std::abs(u));
      if (p * p * sh * sh > 1 + 1e-12)
        fail(ErrorCode::DomainViolation, "1 - p^2 sinh^2 s < 0 on [0, u]");
      return {p * std::cosh(u),
              height_integral([&](double s) { return 1.0 - p * p * std::sinh(s) * std::sinh(s); }, u)};
    }
    case FamilyKind::SinhNegative: {
      const double q = fam.q;
      if (u < 0) fail(ErrorCode::DomainViolation, "sinh-type family needs u >= 0");
      const double ch = std::cosh(u);
      if (q * q * ch * ch > 1 + 1e-12)
        fail(ErrorCode::DomainViolation, "1 - q^2 cosh^2 s < 0 on [0, u]");
      // b = q cosh u equals +f', so the tangent convention (f',h') = (-b,a)
      // flips here: h' = -a and the height descends with u.
      return {q * std::sinh(u),
              -height_integral([&](double s) { return 1.0 - q * q * std::cosh(s) * std::cosh(s); }, u)};
    }
    case FamilyKind::Catenoid:
      return {std::cosh(u), u};
    case FamilyKind::Delaunay: {
      CgcFamily base = fam;
      base.kind = FamilyKind::SpherePositive;
      auto [f, h] = smooth_reference(base, u);
      const double rc = std::sqrt(fam.c);
      const double s = std::sin(rc * u);
      const double a = std::sqrt(std::max(0.0, 1.0 - fam.p * fam.p * fam.c * s * s));
      const double b = fam.p * rc * s;
      double ft = f + (fam.eps / rc) * a;
      const double ht = h + (fam.eps / rc) * b;
      if (fam.eps == -1 && fam.p * rc < 1) ft = -ft;  // same axis convention as delaunay()
      return {ft, ht};
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown family kind");
}

}  // namespace dricci
