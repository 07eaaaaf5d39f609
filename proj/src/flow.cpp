#include "flow.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "geometry.hpp"

namespace dricci {

bool bc_is_cone(FlowBc bc) {
  return bc == FlowBc::PosCone || bc == FlowBc::NegCone || bc == FlowBc::UnnormalizedPosCone;
}

bool bc_is_cusp(FlowBc bc) {
  return bc == FlowBc::PosCusp || bc == FlowBc::NegCusp || bc == FlowBc::UnnormalizedPosCusp;
}

bool bc_normalized(FlowBc bc) {
  return bc != FlowBc::UnnormalizedPosCone && bc != FlowBc::UnnormalizedPosCusp;
}

double bc_pinned_b(FlowBc bc) {
  if (bc == FlowBc::PosCusp || bc == FlowBc::UnnormalizedPosCusp) return 1.0;
  if (bc == FlowBc::NegCusp) return -1.0;
  fail(ErrorCode::InvalidArgument, "tag has no pinned b(k)");
}

const char* bc_name(FlowBc bc) {
  switch (bc) {
    case FlowBc::PosCone: return "pos-cone";
    case FlowBc::NegCone: return "neg-cone";
    case FlowBc::PosCusp: return "pos-cusp";
    case FlowBc::NegCusp: return "neg-cusp";
    case FlowBc::UnnormalizedPosCone: return "unnormalized-pos-cone";
    case FlowBc::UnnormalizedPosCusp: return "unnormalized-pos-cusp";
  }
  return "unknown";
}

FlowBc bc_from_name(const std::string& name, bool unnormalized) {
  if (name == "pos-cone") return unnormalized ? FlowBc::UnnormalizedPosCone : FlowBc::PosCone;
  if (name == "pos-cusp") return unnormalized ? FlowBc::UnnormalizedPosCusp : FlowBc::PosCusp;
  if (unnormalized) fail(ErrorCode::InvalidArgument, "unnormalized flow supports pos-cone and pos-cusp only");
  if (name == "neg-cone") return FlowBc::NegCone;
  if (name == "neg-cusp") return FlowBc::NegCusp;
  fail(ErrorCode::InvalidArgument, "unknown bc '" + name + "'");
}

ProfileCurve FlowState::profile() const {
  ProfileCurve p;
  p.f = f;
  p.h.resize(f.size());
  p.h[0] = 0;  // h(0,t) = 0
  for (size_t n = 0; n < dh.size(); ++n) p.h[n + 1] = p.h[n] + dh[n];
  return p;
}

NormalProfile FlowState::normals() const { return propagate_normal(profile(), a0, b0); }

RevolutionSurface FlowState::surface() const { return RevolutionSurface{profile(), l}; }

double FlowState::constraint_residual() const {
  if (bc_is_cone(bc)) return std::abs(f.back());
  return std::abs(normals().b.back() - bc_pinned_b(bc));
}

void FlowState::validate(double tol) const {
  if (f.size() != dh.size() + 1 || dh.empty())
    fail(ErrorCode::InvalidArgument, "state needs f of length k+1 and dh of length k >= 1");
  if (l < 3) fail(ErrorCode::InvalidArgument, "need at least 3 rotational divisions");
  profile().validate();
  if (std::abs(a0 * a0 + b0 * b0 - 1.0) > 1e-12)
    fail(ErrorCode::InvalidArgument, "seed normal (a0,b0) must be unit length");
  const double res = constraint_residual();
  if (res > tol)
    fail(ErrorCode::InvalidArgument,
         std::string("state violates its boundary condition (") + bc_name(bc) +
             ", residual " + std::to_string(res) + ")");
}

FaceData face_data(const FlowState& state) {
  const RevolutionSurface s = state.surface();
  const NormalProfile np = state.normals();
  const int k = state.bands();
  FaceData d;
  d.g11.resize(k);
  d.g22.resize(k);
  d.K.resize(k);
  d.H.resize(k);
  d.A.resize(k);
  double num = 0;
  for (int n = 0; n < k; ++n) {
    const FaceGeometry fg = face_geometry(s, np, n);
    d.g11[n] = fg.g11;
    d.g22[n] = fg.g22;
    d.K[n] = fg.K;
    d.H[n] = fg.H;
    d.A[n] = fg.area;
    d.total_area += fg.area;
    num += 2.0 * fg.K * fg.area;
  }
  d.r = num / d.total_area;
  return d;
}

double r_of_t(const FlowState& state) { return face_data(state).r; }

namespace {

// Forward-mode gradient of the propagated normal (a(n), b(n)) with respect
// to X = (f(0..k), dh(0..k-1)). Returns the gradients of a(k), b(k).
void propagate_normal_gradient(const FlowState& st, Eigen::VectorXd& ga, Eigen::VectorXd& gb) {
  const int k = st.bands();
  const int dim = 2 * k + 1;
  ga = Eigen::VectorXd::Zero(dim);
  gb = Eigen::VectorXd::Zero(dim);
  double a = st.a0, b = st.b0;
  for (int n = 0; n < k; ++n) {
    const double p = st.f[n + 1] - st.f[n];
    const double q = st.dh[n];
    const double D = p * p + q * q;
    if (D == 0) fail(ErrorCode::ZeroEdge, "zero-length profile edge at n=" + std::to_string(n));
    const double s = a * p + b * q;
    const double R11 = 1 - 2 * p * p / D, R12 = -2 * p * q / D;
    const double R21 = R12, R22 = 1 - 2 * q * q / D;
    const double ca_p = -2 * (s * (D - 2 * p * p) / (D * D) + p * a / D);
    const double ca_q = -2 * (-2 * p * q * s / (D * D) + p * b / D);
    const double cb_p = -2 * (-2 * p * q * s / (D * D) + q * a / D);
    const double cb_q = -2 * (s * (D - 2 * q * q) / (D * D) + q * b / D);
    Eigen::VectorXd na = R11 * ga + R12 * gb;
    Eigen::VectorXd nb = R21 * ga + R22 * gb;
    na(n) -= ca_p;
    na(n + 1) += ca_p;
    na(k + 1 + n) += ca_q;
    nb(n) -= cb_p;
    nb(n + 1) += cb_p;
    nb(k + 1 + n) += cb_q;
    ga.swap(na);
    gb.swap(nb);
    const double a1 = a - 2 * p * s / D;
    const double b1 = b - 2 * q * s / D;
    a = a1;
    b = b1;
  }
}

// ddh(k-1) -> a(k) derivative for the cusp projection Newton step.
double cusp_projection_derivative(const FlowState& st) {
  const NormalProfile np = st.normals();
  const int k = st.bands();
  const double a = np.a[k - 1], b = np.b[k - 1];
  const double p = st.f[k] - st.f[k - 1];
  const double q = st.dh[k - 1];
  const double D = p * p + q * q;
  const double s = a * p + b * q;
  return -2 * (-2 * p * q * s / (D * D) + p * b / D);
}

Eigen::VectorXd pack(const FlowState& st) {
  const int k = st.bands();
  Eigen::VectorXd y(2 * k + 1);
  for (int n = 0; n <= k; ++n) y(n) = st.f[n];
  for (int n = 0; n < k; ++n) y(k + 1 + n) = st.dh[n];
  return y;
}

void unpack(const Eigen::VectorXd& y, FlowState& st) {
  const int k = st.bands();
  for (int n = 0; n <= k; ++n) st.f[n] = y(n);
  for (int n = 0; n < k; ++n) st.dh[n] = y(k + 1 + n);
}

// Constraint map X -> (g11(0..k-1), g22(0..k-1), constraint), used by the
// finite-difference Jacobian oracle.
Eigen::VectorXd constraint_map(const FlowState& st) {
  const int k = st.bands();
  const double cl = std::cos(M_PI / st.l), sl = std::sin(M_PI / st.l);
  Eigen::VectorXd g(2 * k + 1);
  for (int n = 0; n < k; ++n) {
    const double df = st.f[n + 1] - st.f[n];
    const double sf = st.f[n + 1] + st.f[n];
    g(n) = df * df * cl * cl + st.dh[n] * st.dh[n];
    g(k + n) = sf * sf * sl * sl;
  }
  if (bc_is_cone(st.bc))
    g(2 * k) = st.f[k];
  else
    g(2 * k) = st.normals().a.back();
  return g;
}

}  // namespace

Eigen::MatrixXd flow_jacobian(const FlowState& state) {
  const int k = state.bands();
  const int dim = 2 * k + 1;
  const double cl2 = std::pow(std::cos(M_PI / state.l), 2);
  const double sl2 = std::pow(std::sin(M_PI / state.l), 2);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < k; ++n) {
    const double df = state.f[n + 1] - state.f[n];
    const double sf = state.f[n + 1] + state.f[n];
    J(n, n) = -2 * df * cl2;
    J(n, n + 1) = 2 * df * cl2;
    J(n, k + 1 + n) = 2 * state.dh[n];
    J(k + n, n) = 2 * sf * sl2;
    J(k + n, n + 1) = 2 * sf * sl2;
  }
  if (bc_is_cone(state.bc)) {
    J(2 * k, k) = 1.0;
  } else {
    // The pinned form b(k) = +-1 has an identically vanishing gradient on the
    // constraint set (a component of a unit vector at its extremum), so the
    // row enforces the equivalent a(k) = 0 instead.
    Eigen::VectorXd ga, gb;
    propagate_normal_gradient(state, ga, gb);
    J.row(2 * k) = ga.transpose();
  }
  return J;
}

Eigen::MatrixXd flow_jacobian_fd(const FlowState& state, double step_scale) {
  const int k = state.bands();
  const int dim = 2 * k + 1;
  Eigen::MatrixXd J(dim, dim);
  Eigen::VectorXd y = pack(state);
  FlowState tmp = state;
  for (int j = 0; j < dim; ++j) {
    const double h = step_scale * std::max(1.0, std::abs(y(j)));
    Eigen::VectorXd yp = y, ym = y;
    yp(j) += h;
    ym(j) -= h;
    unpack(yp, tmp);
    const Eigen::VectorXd gp = constraint_map(tmp);
    unpack(ym, tmp);
    const Eigen::VectorXd gm = constraint_map(tmp);
    J.col(j) = (gp - gm) / (2 * h);
  }
  return J;
}

Eigen::VectorXd rhs_generic(const FlowState& state) {
  const int k = state.bands();
  const FaceData d = face_data(state);
  const double r = bc_normalized(state.bc) ? d.r : 0.0;
  Eigen::VectorXd rhs(2 * k + 1);
  for (int n = 0; n < k; ++n) {
    rhs(n) = (r - 2 * d.K[n]) * d.g11[n];
    rhs(k + n) = (r - 2 * d.K[n]) * d.g22[n];
  }
  rhs(2 * k) = 0;
  const Eigen::MatrixXd J = flow_jacobian(state);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
  const double rc = lu.rcond();
  if (!(rc > 1e-13))
    fail(ErrorCode::SingularJacobian,
         "constraint Jacobian is numerically singular (rcond estimate " + std::to_string(rc) + ")");
  return lu.solve(rhs);
}

Eigen::VectorXd rhs_explicit_flow5(const FlowState& state) {
  if (state.bc != FlowBc::PosCone)
    fail(ErrorCode::InvalidArgument, "explicit system is stated for the pos-cone flow");
  const int k = state.bands();
  const FaceData d = face_data(state);
  const double r = d.r;
  const double cl2 = std::pow(std::cos(M_PI / state.l), 2);
  Eigen::VectorXd out(2 * k + 1);
  // Both alternating sums carry (-1)^{i-1}: back-substituting the g22 rows
  // from f(k,t)=0 fixes the convention, and the g11 rows inherit it.
  for (int n = 0; n < k; ++n) {
    double sum = 0;
    for (int i = 1; i <= k - n - 1; ++i) {
      const double sgn = (i % 2 == 1) ? 1.0 : -1.0;
      sum += sgn * state.f[n + i] * (d.K[n + i] - d.K[n + i - 1]);
    }
    out(n) = sum + 0.5 * (r - 2 * d.K[n]) * state.f[n];
  }
  out(k) = 0;
  for (int n = 0; n < k; ++n) {
    double sum = 0;
    if (k - n - 1 >= 1) {
      if (state.dh[n] == 0)
        fail(ErrorCode::DivisionByZero, "dh(" + std::to_string(n) + ") = 0 in the explicit system");
      const double ratio = (state.f[n + 1] - state.f[n]) / state.dh[n];
      for (int i = 1; i <= k - n - 1; ++i) {
        const double sgn = (i % 2 == 1) ? 1.0 : -1.0;
        sum += 2 * sgn * state.f[n + i] * ratio * (d.K[n + i] - d.K[n + i - 1]) * cl2;
      }
    }
    out(k + 1 + n) = sum + 0.5 * (r - 2 * d.K[n]) * state.dh[n];
  }
  return out;
}

namespace {

void rk4_step(FlowState& st, double dt) {
  Eigen::VectorXd y = pack(st);
  FlowState tmp = st;
  auto F = [&](const Eigen::VectorXd& z) {
    unpack(z, tmp);
    return rhs_generic(tmp);
  };
  const Eigen::VectorXd k1 = F(y);
  const Eigen::VectorXd k2 = F(y + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = F(y + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = F(y + dt * k3);
  y += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  unpack(y, st);
}

void check_step_health(const FlowState& st, double t) {
  const int k = st.bands();
  for (int n = 0; n <= k; ++n)
    if (!std::isfinite(st.f[n]))
      fail(ErrorCode::StepFailure, "non-finite state at t=" + std::to_string(t));
  for (int n = 0; n < k; ++n) {
    if (!std::isfinite(st.dh[n]))
      fail(ErrorCode::StepFailure, "non-finite state at t=" + std::to_string(t));
    const double df = st.f[n + 1] - st.f[n];
    if (df * df + st.dh[n] * st.dh[n] == 0)
      fail(ErrorCode::StepFailure,
           "zero-length edge at n=" + std::to_string(n) + ", t=" + std::to_string(t));
  }
  for (int n = 0; n < k; ++n)
    if (st.f[n] <= 0)
      fail(ErrorCode::StepFailure,
           "f(" + std::to_string(n) + ") reached 0 at t=" + std::to_string(t));
  if (bc_is_cusp(st.bc) && st.f[k] <= 0)
    fail(ErrorCode::StepFailure, "f(k) reached 0 at t=" + std::to_string(t));
}

// Returns the pre-projection constraint residual.
double project_constraints(FlowState& st, double tol) {
  const int k = st.bands();
  if (bc_is_cone(st.bc)) {
    const double res = std::abs(st.f[k]);
    st.f[k] = 0;
    return res;
  }
  const double pin = bc_pinned_b(st.bc);
  const double res = std::abs(st.normals().b.back() - pin);
  if (res > tol) {
    // single Newton correction on dh(k-1), driving a(k) -> 0 (the residual in
    // b is quadratic in a near the pin, so this converges faster than Newton
    // on b itself and its derivative does not vanish there)
    const double deriv = cusp_projection_derivative(st);
    if (!std::isfinite(deriv) || deriv == 0)
      fail(ErrorCode::SingularJacobian, "cusp projection derivative vanished");
    st.dh[k - 1] -= st.normals().a.back() / deriv;
  }
  return res;
}

}  // namespace

FlowTrace integrate(const FlowState& initial, const FlowOptions& opts) {
  if (opts.dt <= 0 || opts.t_end < 0) fail(ErrorCode::InvalidArgument, "need dt > 0 and t_end >= 0");
  if (opts.stride < 1) fail(ErrorCode::InvalidArgument, "need stride >= 1");
  initial.validate(opts.constraint_tol);

  FlowTrace trace;
  FlowState st = initial;
  double pre_worst = 0;
  int consecutive = 0;

  auto record = [&](double pre_residual) {
    const FaceData d = face_data(st);
    trace.times.push_back(st.t);
    trace.states.push_back(st);
    trace.K_history.push_back(d.K);
    trace.area_history.push_back(d.total_area);
    trace.r_history.push_back(d.r);
    trace.constraint_history.push_back(st.constraint_residual());
    trace.constraint_pre_history.push_back(pre_residual);
    if (bc_normalized(st.bc)) {
      double spread = 0;
      for (double K : d.K) spread = std::max(spread, std::abs(K - d.r / 2));
      consecutive = spread < opts.stop_spread ? consecutive + 1 : 0;
      if (consecutive >= opts.stop_consecutive) trace.stopped_early = true;
    }
  };

  record(0);

  const double t0 = initial.t;
  double elapsed = 0;
  long step_count = 0;
  double cur_dt = opts.dt;
  const double dt_floor = opts.dt * std::pow(0.5, 40);

  while (elapsed < opts.t_end * (1 - 1e-14) && !trace.stopped_early) {
    double dt = std::min(opts.adaptive ? cur_dt : opts.dt, opts.t_end - elapsed);
    // A stage evaluation entering the invalid region (negative radius, zero
    // edge, degenerate band) is a breakdown of the flow, not caller misuse.
    try {
      if (opts.adaptive) {
        for (;;) {
          FlowState full = st, halves = st;
          rk4_step(full, dt);
          rk4_step(halves, dt / 2);
          rk4_step(halves, dt / 2);
          const double err = (pack(full) - pack(halves)).cwiseAbs().maxCoeff() / 15.0;
          if (err <= opts.adapt_tol || dt <= dt_floor) {
            st = halves;
            if (err < opts.adapt_tol / 64) cur_dt = std::min(2 * dt, opts.dt);
            else cur_dt = dt;
            break;
          }
          dt *= 0.5;
          if (dt < dt_floor)
            fail(ErrorCode::StepFailure, "step size underflow at t=" + std::to_string(t0 + elapsed));
        }
      } else {
        rk4_step(st, dt);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularJacobian || e.code() == ErrorCode::StepFailure) throw;
      fail(ErrorCode::StepFailure,
           "flow broke down at t=" + std::to_string(t0 + elapsed) + ": " + e.what());
    }
    elapsed += dt;
    st.t = t0 + elapsed;
    check_step_health(st, st.t);
    pre_worst = std::max(pre_worst, project_constraints(st, opts.constraint_tol));
    ++step_count;
    if (step_count % opts.stride == 0 || elapsed >= opts.t_end * (1 - 1e-14)) {
      record(pre_worst);
      pre_worst = 0;
    }
  }
  return trace;
}

FlowState sphere_state(int k, int l, FlowBc bc) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "need k >= 1");
  FlowState st;
  st.bc = bc;
  st.l = l;
  st.a0 = 1;
  st.b0 = 0;
  st.f.resize(k + 1);
  st.dh.resize(k);
  for (int n = 0; n <= k; ++n) st.f[n] = std::cos(M_PI * n / (2.0 * k));
  st.f[k] = 0;
  for (int n = 0; n < k; ++n)
    st.dh[n] = std::sin(M_PI * (n + 1) / (2.0 * k)) - std::sin(M_PI * n / (2.0 * k));
  st.validate();
  return st;
}

FlowState dumbbell_state(int k, int l, double pinch, FlowBc bc) {
  if (!bc_is_cone(bc)) fail(ErrorCode::InvalidArgument, "dumbbell fixture is a cone-type state");
  if (pinch < 0 || pinch >= 1) fail(ErrorCode::InvalidArgument, "need 0 <= pinch < 1");
  FlowState st = sphere_state(k, l, bc);
  for (int n = 0; n < k; ++n) {
    const double th = M_PI * n / (2.0 * k);
    st.f[n] *= 1.0 - pinch * std::pow(std::sin(2 * th), 2);
  }
  st.validate();
  return st;
}

FlowState family_state(const FamilySurface& fs, int l, FlowBc bc) {
  const int k = fs.profile.layers() - 1;
  FlowState st;
  st.bc = bc;
  st.l = l;
  st.a0 = fs.normal.a.front();
  st.b0 = fs.normal.b.front();
  st.f = fs.profile.f;
  st.dh.resize(k);
  for (int n = 0; n < k; ++n) st.dh[n] = fs.profile.h[n + 1] - fs.profile.h[n];
  double fmax = 0;
  for (double v : st.f) fmax = std::max(fmax, v);
  if (bc_is_cone(bc)) {
    if (std::abs(st.f[k]) > 1e-12 * fmax)
      fail(ErrorCode::InvalidArgument, "family state does not satisfy f(k) = 0");
    st.f[k] = 0;
  } else {
    for (int iter = 0; iter < 3 && st.constraint_residual() > 1e-15; ++iter) {
      const double deriv = cusp_projection_derivative(st);
      st.dh[k - 1] -= st.normals().a.back() / deriv;
    }
  }
  st.validate();
  return st;
}

FlowState perturbed_family_state(const CgcFamily& fam, const SampleGrid& grid,
                                 int l, FlowBc bc, double amplitude, uint64_t seed) {
  FlowState st = family_state(make_family(fam, grid), l, bc);
  const int k = st.bands();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-amplitude, amplitude);
  for (int n = 0; n < k; ++n) st.f[n] *= 1.0 + jitter(rng);  // f(k) stays pinned for cones
  if (bc_is_cusp(bc)) st.f[k] *= 1.0 + jitter(rng);
  for (int n = 0; n < k; ++n) st.dh[n] *= 1.0 + jitter(rng);
  if (bc_is_cusp(bc)) {
    for (int iter = 0; iter < 50 && st.constraint_residual() > 1e-15; ++iter) {
      const double deriv = cusp_projection_derivative(st);
      if (!std::isfinite(deriv) || deriv == 0)
        fail(ErrorCode::SingularJacobian, "cusp projection derivative vanished");
      st.dh[k - 1] -= st.normals().a.back() / deriv;
    }
  }
  st.validate();
  return st;
}

}  // namespace dricci
