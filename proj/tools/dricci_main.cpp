#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dricci/dricci.h"

namespace {

// Relative output paths land in $DRICCI_OUT_DIR when it is set.
std::string out_path(const std::string& p) {
  if (p.empty() || p.front() == '/') return p;
  const char* dir = std::getenv("DRICCI_OUT_DIR");
  if (!dir || !*dir) return p;
  return std::string(dir) + "/" + p;
}

int report_error() {
  std::fprintf(stderr, "error: %s\n", dricci_last_error());
  return 1;
}

#define MUST(call)                          \
  do {                                      \
    if ((call) != DRICCI_OK) return report_error(); \
  } while (0)

struct ParametrizeArgs {
  std::string family, grid, obj, csv, json;
  double p = 1.0, q = 0.5, c = 1.0;
  int eps = 1, l = 24;
};

int run_parametrize(const ParametrizeArgs& a) {
  dricci_profile* prof = nullptr;
  MUST(dricci_profile_from_family(a.family.c_str(), a.p, a.q, a.c, a.eps, a.grid.c_str(), a.l,
                                  &prof));
  std::printf("parametrize: %s, %d layers, l=%d\n", a.family.c_str(),
              dricci_profile_layers(prof), dricci_profile_l(prof));
  int rc = 0;
  if (!a.obj.empty() && dricci_profile_write_obj(prof, out_path(a.obj).c_str()) != DRICCI_OK)
    rc = report_error();
  if (rc == 0 && !a.csv.empty() &&
      dricci_profile_write_csv(prof, out_path(a.csv).c_str()) != DRICCI_OK)
    rc = report_error();
  if (rc == 0 && !a.json.empty() &&
      dricci_profile_write_json(prof, out_path(a.json).c_str()) != DRICCI_OK)
    rc = report_error();
  dricci_profile_destroy(prof);
  return rc;
}

struct FlowArgs {
  std::string bc, init, fixture = "sphere", out, mesh_dir = ".";
  bool unnormalized = false, fit = false;
  int k = 6, l = 24, stride = 100;
  double pinch = 0.35, dt = 1e-3, t_end = 1.0, mesh_every = 0;
};

int run_flow(const FlowArgs& a) {
  dricci_profile* prof = nullptr;
  if (!a.init.empty())
    MUST(dricci_profile_from_json_file(a.init.c_str(), &prof));
  else
    MUST(dricci_profile_fixture(a.fixture.c_str(), a.k, a.l, a.pinch, &prof));

  dricci_trace* trace = nullptr;
  const dricci_status st = dricci_flow_run(prof, a.bc.c_str(), a.unnormalized ? 1 : 0, a.dt,
                                           a.t_end, a.stride, &trace);
  dricci_profile_destroy(prof);
  if (st != DRICCI_OK) return report_error();

  const int snaps = dricci_trace_snapshots(trace);
  std::printf("flow: %s%s, %d snapshots, t in [%g, %g], r(end)=%.6g%s\n", a.bc.c_str(),
              a.unnormalized ? " (unnormalized)" : "", snaps, dricci_trace_time(trace, 0),
              dricci_trace_time(trace, snaps - 1), dricci_trace_r(trace, snaps - 1),
              dricci_trace_stopped_early(trace) ? ", stopped early" : "");

  int rc = 0;
  if (!a.out.empty() && dricci_trace_write_csv(trace, out_path(a.out).c_str()) != DRICCI_OK)
    rc = report_error();

  if (rc == 0 && a.mesh_every > 0) {
    double next = dricci_trace_time(trace, 0);
    int emitted = 0;
    for (int i = 0; i < snaps && rc == 0; ++i) {
      if (dricci_trace_time(trace, i) < next) continue;
      dricci_profile* snap = nullptr;
      if (dricci_trace_state(trace, i, &snap) != DRICCI_OK) {
        rc = report_error();
        break;
      }
      char name[64];
      std::snprintf(name, sizeof name, "flow_%04d.obj", emitted++);
      if (dricci_profile_write_obj(snap, (out_path(a.mesh_dir) + "/" + name).c_str()) != DRICCI_OK)
        rc = report_error();
      dricci_profile_destroy(snap);
      next += a.mesh_every;
    }
  }

  if (rc == 0 && a.fit) {
    std::vector<char> buf(1 << 20);
    if (dricci_trace_fit_json(trace, buf.data(), buf.size()) != DRICCI_OK)
      rc = report_error();
    else
      std::fputs(buf.data(), stdout);
  }
  dricci_trace_destroy(trace);
  return rc;
}

struct CompareArgs {
  std::string family, levels = "8,16,32,64", out;
  double p = 1.0, q = 0.5, c = 1.0, u_max = 1.0;
  int eps = 1;
};

int run_compare_cmd(const CompareArgs& a) {
  std::vector<int> levels;
  std::string item;
  for (char ch : a.levels + ",") {
    if (ch == ',') {
      if (!item.empty()) levels.push_back(std::atoi(item.c_str()));
      item.clear();
    } else {
      item += ch;
    }
  }
  double order = 0;
  const std::string csv = a.out.empty() ? "" : out_path(a.out);
  MUST(dricci_compare(a.family.c_str(), a.p, a.q, a.c, a.eps, a.u_max, levels.data(),
                      static_cast<int>(levels.size()), csv.empty() ? nullptr : csv.c_str(),
                      &order));
  std::printf("compare: %s, convergence order %.3f\n", a.family.c_str(), order);
  return 0;
}

struct CheckArgs {
  uint64_t seed = 42;
  int trials = 100;
  std::vector<std::string> tols;
};

int run_check_cmd(const CheckArgs& a) {
  std::string overrides;
  for (const auto& t : a.tols) {
    if (!overrides.empty()) overrides += ',';
    overrides += t;
  }
  int passed = 0;
  std::vector<char> buf(1 << 16);
  MUST(dricci_check(a.seed, a.trials, overrides.c_str(), &passed, buf.data(), buf.size()));
  std::fputs(buf.data(), stdout);
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(dricci_version()) +
               " - discrete surfaces of revolution: constant-curvature "
               "parametrizations and Ricci flow.\nRelative output paths are "
               "prefixed with $DRICCI_OUT_DIR when set."};
  app.require_subcommand(1);

  ParametrizeArgs pa;
  CLI::App* parametrize = app.add_subcommand("parametrize", "Build a constant-curvature family");
  parametrize->add_option("--family", pa.family,
                          "sphere-positive | pseudosphere | cosh-negative | sinh-negative | "
                          "catenoid | delaunay")->required();
  parametrize->add_option("--p", pa.p, "amplitude parameter (sphere/cosh/delaunay)");
  parametrize->add_option("--q", pa.q, "sinh-type parameter in (0,1)");
  parametrize->add_option("--c", pa.c, "curvature of the positive families");
  parametrize->add_option("--eps", pa.eps, "delaunay offset sign, +1 or -1");
  parametrize->add_option("--grid", pa.grid,
                          "samples: \"[0, 0.1, ...]\", \"linspace(a,b,M)\", or "
                          "\"expr : n = lo .. hi\"")->required();
  parametrize->add_option("--l", pa.l, "rotational divisions (>= 3)");
  parametrize->add_option("--out", pa.obj, "OBJ mesh output path");
  parametrize->add_option("--csv", pa.csv, "profile CSV output path (n, u_n, f, h, a, b)");
  parametrize->add_option("--json", pa.json, "profile JSON output path");

  FlowArgs fa;
  CLI::App* flow = app.add_subcommand("flow", "Integrate the constrained Ricci flow");
  flow->add_option("--bc", fa.bc, "pos-cone | neg-cone | pos-cusp | neg-cusp")->required();
  flow->add_flag("--unnormalized", fa.unnormalized, "drop the r(t) normalization term");
  flow->add_option("--init", fa.init, "initial profile JSON (from parametrize --json)");
  flow->add_option("--fixture", fa.fixture, "built-in initial state: sphere | dumbbell");
  flow->add_option("--k", fa.k, "bands of the built-in fixture");
  flow->add_option("--l", fa.l, "rotational divisions of the built-in fixture");
  flow->add_option("--pinch", fa.pinch, "dumbbell pinch in [0,1)");
  flow->add_option("--dt", fa.dt, "RK4 step size");
  flow->add_option("--t-end", fa.t_end, "integration time");
  flow->add_option("--stride", fa.stride, "steps between recorded snapshots");
  flow->add_option("--out", fa.out, "trace CSV output path (t, n, f, h, a, b, K, H, A, r)");
  flow->add_option("--mesh-every", fa.mesh_every, "OBJ snapshot period in flow time");
  flow->add_option("--mesh-dir", fa.mesh_dir, "directory for OBJ snapshots");
  flow->add_flag("--fit", fa.fit, "print the constant-curvature fit of the final state as JSON");

  CompareArgs ca;
  CLI::App* compare = app.add_subcommand("compare", "Discrete family vs smooth reference");
  compare->add_option("--family", ca.family, "family name (see parametrize)")->required();
  compare->add_option("--p", ca.p, "amplitude parameter");
  compare->add_option("--q", ca.q, "sinh-type parameter");
  compare->add_option("--c", ca.c, "curvature of the positive families");
  compare->add_option("--eps", ca.eps, "delaunay offset sign");
  compare->add_option("--u-max", ca.u_max, "parameter interval is [0, u_max]")->required();
  compare->add_option("--levels", ca.levels, "comma-separated subdivision counts");
  compare->add_option("--out", ca.out, "comparison CSV output path");

  CheckArgs ka;
  CLI::App* check = app.add_subcommand("check", "Randomized invariant suites (exit 0 iff pass)");
  check->add_option("--seed", ka.seed, "RNG seed");
  check->add_option("--trials", ka.trials, "randomized instances per suite (0 = vacuous pass)");
  check->add_option("--tol", ka.tols, "override, e.g. --tol steiner=1e-9 (repeatable)");

  CLI11_PARSE(app, argc, argv);

  if (*parametrize) return run_parametrize(pa);
  if (*flow) return run_flow(fa);
  if (*compare) return run_compare_cmd(ca);
  if (*check) return run_check_cmd(ka);
  return 0;
}
