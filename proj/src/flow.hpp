#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "families.hpp"
#include "types.hpp"

namespace dricci {

enum class FlowBc {
  PosCone,              // f(k) = 0, seed (a0,b0) = (1,0), normalized
  NegCone,              // f(k) = 0, seed (0,1), normalized
  PosCusp,              // b(k) = +1, seed (1,0), normalized
  NegCusp,              // b(k) = -1, seed (1,0), normalized
  UnnormalizedPosCone,  // as PosCone with r replaced by 0
  UnnormalizedPosCusp,  // as PosCusp with r replaced by 0
};

bool bc_is_cone(FlowBc bc);
bool bc_is_cusp(FlowBc bc);
bool bc_normalized(FlowBc bc);
double bc_pinned_b(FlowBc bc);  // +1 or -1 for cusp tags
const char* bc_name(FlowBc bc);
FlowBc bc_from_name(const std::string& name, bool unnormalized);

// ODE state X(t): the 2k+1 unknowns (f(0..k), dh(0..k-1)) plus the pinned
// normal seed and the boundary-condition tag. The rotational division count
// l enters the flow through cos^2(pi/l) and sin^2(pi/l) in the metric.
struct FlowState {
  std::vector<double> f;   // length k+1
  std::vector<double> dh;  // dh(n) = h(n+1) - h(n), length k
  double a0 = 1.0;
  double b0 = 0.0;
  FlowBc bc = FlowBc::PosCone;
  int l = 24;
  double t = 0.0;

  int bands() const { return static_cast<int>(dh.size()); }  // k
  ProfileCurve profile() const;  // absolute heights anchored at h(0) = 0
  NormalProfile normals() const;
  RevolutionSurface surface() const;
  double constraint_residual() const;  // |f(k)| or |b(k) -+ 1|
  void validate(double tol = 1e-12) const;
};

// Per-face quantities of a state, via face_geometry.
struct FaceData {
  std::vector<double> g11, g22, K, H, A;
  double total_area = 0;
  double r = 0;  // area-weighted mean of 2K
};

FaceData face_data(const FlowState& state);

double r_of_t(const FlowState& state);

// dX/dt from the linear system J dX/dt = rhs, where J is the Jacobian of
// X -> (g11(0..k-1), g22(0..k-1), constraint) and
// rhs = ((r-2K)g11, (r-2K)g22, 0); r = 0 for the unnormalized tags.
Eigen::VectorXd rhs_generic(const FlowState& state);

// The printed explicit system for the positive-cone flow; serves as the
// independent oracle for rhs_generic.
Eigen::VectorXd rhs_explicit_flow5(const FlowState& state);

Eigen::MatrixXd flow_jacobian(const FlowState& state);  // analytic
Eigen::MatrixXd flow_jacobian_fd(const FlowState& state, double step_scale = 1e-6);

struct FlowOptions {
  double dt = 1e-3;
  double t_end = 1.0;
  int stride = 100;            // steps between recorded snapshots
  bool adaptive = false;       // step-halving on a step-doubling error estimate
  double adapt_tol = 1e-10;
  double stop_spread = 1e-10;  // stop when max|K - r/2| stays below this
  int stop_consecutive = 10;   // ... for this many consecutive snapshots
  double constraint_tol = 1e-12;
};

struct FlowTrace {
  std::vector<double> times;
  std::vector<FlowState> states;
  std::vector<std::vector<double>> K_history;
  std::vector<double> area_history;        // total mixed area
  std::vector<double> r_history;
  std::vector<double> constraint_history;  // residual of the recorded state
  std::vector<double> constraint_pre_history;  // worst pre-projection residual
  bool stopped_early = false;

  const FlowState& final_state() const { return states.back(); }
};

FlowTrace integrate(const FlowState& initial, const FlowOptions& opts);

// Fixtures. sphere_state is the exact stationary round sphere; the dumbbell
// pinches it by f -> f (1 - pinch sin^2(2 theta)); the perturbed family
// states jitter f and dh by a seeded relative amplitude, then re-project the
// boundary constraint.
FlowState sphere_state(int k, int l, FlowBc bc);
FlowState dumbbell_state(int k, int l, double pinch, FlowBc bc);
FlowState family_state(const FamilySurface& fs, int l, FlowBc bc);
FlowState perturbed_family_state(const CgcFamily& fam, const SampleGrid& grid,
                                 int l, FlowBc bc, double amplitude, uint64_t seed);

}  // namespace dricci
