// gradlab command line: thin dispatcher over the C API.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradlab/gradlab.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kSolver = 2, kConfig = 3 };

struct Common {
  std::string config;
  std::string out;
  int grid = 0;
  bool quiet = false;
  bool timing = false;
};

using ScenarioPtr = std::unique_ptr<gradlab_scenario, decltype(&gradlab_scenario_destroy)>;
using ReportPtr = std::unique_ptr<gradlab_report, decltype(&gradlab_report_destroy)>;

int report_error(gradlab_status st) {
  std::fprintf(stderr, "gradlab: %s\n", gradlab_last_error());
  if (st == GRADLAB_E_SOLVER) return kSolver;
  if (st == GRADLAB_E_CONFIG || st == GRADLAB_E_HYPOTHESIS || st == GRADLAB_E_IO) return kConfig;
  return kFail;
}

// loads the config and applies --grid; nullptr after printing the error
ScenarioPtr load(const Common& c, int& code) {
  gradlab_scenario* raw = nullptr;
  gradlab_status st = gradlab_scenario_load(c.config.c_str(), &raw);
  ScenarioPtr s(raw, gradlab_scenario_destroy);
  if (st == GRADLAB_OK && c.grid > 0) st = gradlab_scenario_set(s.get(), "solver.grid", std::to_string(c.grid).c_str());
  if (st != GRADLAB_OK) {
    code = report_error(st);
    return ScenarioPtr(nullptr, gradlab_scenario_destroy);
  }
  return s;
}

std::string report_path(const gradlab_scenario* s) {
  size_t need = 0;
  gradlab_scenario_serialize(s, nullptr, 0, &need);
  std::string text(need, '\0');
  gradlab_scenario_serialize(s, text.data(), text.size(), &need);
  const std::string key = "\nreport = ";
  const auto at = text.find(key);
  if (at == std::string::npos) return "";
  const auto end = text.find('\n', at + key.size());
  return text.substr(at + key.size(), end - at - key.size());
}

void print_rows(const gradlab_report* r) {
  for (size_t i = 0; i < gradlab_report_size(r); ++i) {
    gradlab_row row;
    gradlab_report_row(r, i, &row);
    const char* verdict = row.pass ? "PASS" : (row.gating ? "FAIL" : "info");
    std::fprintf(stderr, "%s %-28s %-30s lhs=%-12.6g rhs=%-12.6g margin=%.6g%s%s\n", verdict, row.case_id,
                 row.check, row.lhs_max, row.rhs, row.margin, row.note[0] ? "  " : "", row.note);
  }
}

// writes the CSV and maps the report to an exit code
int finish(const gradlab_report* r, const std::string& out, const Common& c) {
  if (!c.quiet) print_rows(r);
  if (out.empty()) {
    size_t need = 0;
    gradlab_report_csv(r, nullptr, 0, &need);
    std::string text(need, '\0');
    gradlab_report_csv(r, text.data(), text.size(), &need);
    text.pop_back();
    std::fputs(text.c_str(), stdout);
  } else if (gradlab_status st = gradlab_report_write_csv(r, out.c_str()); st != GRADLAB_OK) {
    std::fprintf(stderr, "gradlab: %s\n", gradlab_last_error());
    return kConfig;
  }
  if (gradlab_report_solver_failed(r)) return kSolver;
  return gradlab_report_all_passed(r) ? kPass : kFail;
}

FILE* open_out(const std::string& path) { return path.empty() ? stdout : std::fopen(path.c_str(), "w"); }

int solve_elliptic(const Common& c) {
  int code = kPass;
  auto s = load(c, code);
  if (!s) return code;
  gradlab_elliptic* e = nullptr;
  if (gradlab_status st = gradlab_solve_elliptic(s.get(), &e); st != GRADLAB_OK) return report_error(st);
  std::unique_ptr<gradlab_elliptic, decltype(&gradlab_elliptic_destroy)> sol(e, gradlab_elliptic_destroy);
  const size_t N = gradlab_elliptic_size(e);
  std::vector<double> r(N), u(N);
  gradlab_elliptic_values(e, r.data(), u.data(), N);
  FILE* f = open_out(c.out);
  if (!f) {
    std::fprintf(stderr, "gradlab: cannot open '%s'\n", c.out.c_str());
    return kConfig;
  }
  std::fprintf(f, "r,u\n");
  for (size_t i = 0; i < N; ++i) std::fprintf(f, "%.17g,%.17g\n", r[i], u[i]);
  if (f != stdout) std::fclose(f);
  if (!c.quiet) {
    std::fprintf(stderr, "solved: %zu nodes, %d Newton iterations, residual %.3g\n", N, gradlab_elliptic_iterations(e),
                 gradlab_elliptic_residual(e));
  }
  return kPass;
}

int solve_parabolic(const Common& c, size_t every) {
  int code = kPass;
  auto s = load(c, code);
  if (!s) return code;
  gradlab_trajectory* t = nullptr;
  if (gradlab_status st = gradlab_solve_parabolic(s.get(), &t); st != GRADLAB_OK) return report_error(st);
  std::unique_ptr<gradlab_trajectory, decltype(&gradlab_trajectory_destroy)> traj(t, gradlab_trajectory_destroy);
  const size_t M = gradlab_trajectory_snapshots(t), N = gradlab_trajectory_nodes(t);
  if (every == 0) every = std::max<size_t>(1, (M - 1) / 10);
  FILE* f = open_out(c.out);
  if (!f) {
    std::fprintf(stderr, "gradlab: cannot open '%s'\n", c.out.c_str());
    return kConfig;
  }
  std::vector<double> r(N), u(N);
  std::fprintf(f, "t,r,u\n");
  for (size_t m = 0; m < M; ++m) {
    if (m % every != 0 && m + 1 != M) continue;
    gradlab_trajectory_values(t, m, r.data(), u.data(), N);
    const double time = gradlab_trajectory_time(t, m);
    for (size_t i = 0; i < N; ++i) std::fprintf(f, "%.17g,%.17g,%.17g\n", time, r[i], u[i]);
  }
  if (f != stdout) std::fclose(f);
  if (!c.quiet) std::fprintf(stderr, "solved: %zu snapshots of %zu nodes\n", M, N);
  return kPass;
}

int verify(const Common& c) {
  int code = kPass;
  auto s = load(c, code);
  if (!s) return code;
  gradlab_report* raw = nullptr;
  if (gradlab_status st = gradlab_run_case(s.get(), c.timing ? GRADLAB_FLAG_TIMING : 0u, &raw); st != GRADLAB_OK) {
    return report_error(st);
  }
  ReportPtr r(raw, gradlab_report_destroy);
  return finish(r.get(), c.out.empty() ? report_path(s.get()) : c.out, c);
}

int sweep(const Common& c, const std::vector<std::string>& params) {
  int code = kPass;
  auto s = load(c, code);
  if (!s) return code;
  std::vector<const char*> ptrs;
  for (const auto& p : params) ptrs.push_back(p.c_str());
  gradlab_report* raw = nullptr;
  const gradlab_status st =
      gradlab_run_sweep(s.get(), ptrs.data(), ptrs.size(), c.timing ? GRADLAB_FLAG_TIMING : 0u, &raw);
  if (st != GRADLAB_OK) return report_error(st);
  ReportPtr r(raw, gradlab_report_destroy);
  return finish(r.get(), c.out.empty() ? report_path(s.get()) : c.out, c);
}

int selftest(const Common& c) {
  gradlab_report* raw = nullptr;
  if (gradlab_status st = gradlab_selftest(&raw); st != GRADLAB_OK) return report_error(st);
  ReportPtr r(raw, gradlab_report_destroy);
  return finish(r.get(), c.out, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradlab: gradient estimate lab for u log u equations on model manifolds"};
  app.set_version_flag("--version", gradlab_version());
  app.require_subcommand(1);

  Common c;
  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) sub->add_option("config", c.config, "scenario config file")->required();
    sub->add_option("--out", c.out, "output CSV path (default: report key, else stdout)");
    sub->add_option("--grid", c.grid, "override solver.grid")->check(CLI::Range(64, 1 << 22));
    sub->add_flag("--quiet", c.quiet, "no per-row summary on stderr");
    sub->add_flag("--timing", c.timing, "record wall time in runtime_ms (breaks byte determinism)");
  };

  auto* ell = app.add_subcommand("solve-elliptic", "solve the stationary equation, write r,u");
  add_common(ell, true);
  auto* par = app.add_subcommand("solve-parabolic", "run implicit Euler, write t,r,u snapshots");
  add_common(par, true);
  size_t every = 0;
  par->add_option("--every", every, "write every k-th snapshot (default: about 10 snapshots)");
  auto* ver = app.add_subcommand("verify", "run the checks of a scenario, write the report CSV");
  add_common(ver, true);
  auto* swp = app.add_subcommand("sweep", "run a scenario over a parameter grid");
  add_common(swp, true);
  std::vector<std::string> params;
  swp->add_option("--param", params, "key=v1,v2,... (repeatable; ';' separates values containing commas)")
      ->required();
  auto* st = app.add_subcommand("selftest", "identity and convergence properties of the discretisation");
  add_common(st, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfig;
  }

  if (*ell) return solve_elliptic(c);
  if (*par) return solve_parabolic(c, every);
  if (*ver) return verify(c);
  if (*swp) return sweep(c, params);
  return selftest(c);
}
