#include "core/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "core/cutoff.hpp"
#include "core/error.hpp"

namespace gradlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCutoffTol = 1e-9;

bool wants(const std::vector<std::string>& checks, const char* name) {
  return std::find(checks.begin(), checks.end(), name) != checks.end();
}

CheckReport failed_row(const Scenario& s, const std::string& check, const std::string& note) {
  CheckReport r;
  r.case_id = s.id;
  r.check = check;
  r.n = s.n;
  r.R = s.R;
  r.K = r.C1 = r.C2 = r.B = r.A = r.M = kNaN;
  r.lhs_max = r.rhs = r.margin = kNaN;
  r.pass = false;
  r.grid = s.grid;
  r.tau = s.case_tag == CaseTag::Thm2 ? s.tau : 0.0;
  r.note = note;
  return r;
}

// Row whose margin is a precomputed minimum: lhs = rhs - min.
CheckReport margin_row(const EstimateContext& ctx, const std::string& check, double rhs, double min_margin,
                       double tolerance) {
  CheckReport r = report_from(ctx, check);
  settle(r, rhs - min_margin, rhs, tolerance);
  r.margin = min_margin;  // keep the exact minimum, not rhs - (rhs - min)
  r.pass = std::isfinite(min_margin) && min_margin >= -tolerance;
  return r;
}

void cutoff_rows(const Scenario& s, const EstimateContext& ctx, std::vector<CheckReport>& out) {
  const CutoffProfile phi = build_cutoff(s.R);
  const ModelManifold manifold = scenario_manifold(s);
  const double c = phi.C1() * phi.C1() / (s.R * s.R);
  out.push_back(margin_row(ctx, "cutoff_gradient", c, verify_cutoff_gradient(phi, manifold), kCutoffTol));
  out.push_back(margin_row(ctx, "cutoff_laplacian", ctx.B, verify_cutoff_laplacian(phi, manifold, ctx.K), kCutoffTol));
}

CheckReport lemma_row(const EstimateContext& ctx, const std::string& check, const LemmaMargins& m, double tol,
                      const RadialGrid& grid) {
  CheckReport r = margin_row(ctx, check, 0.0, m.min_margin, tol * m.scale);
  r.diagnostics.push_back({"scale", m.scale});
  r.diagnostics.push_back({"nodes", static_cast<double>(m.nodes.size())});
  if (!m.nodes.empty()) r.diagnostics.push_back({"r_at_min", grid.node(m.argmin)});
  return r;
}

// Runs one check, turning non-solver errors into a failed row.
template <class F>
void guarded(const Scenario& s, const std::string& check, std::vector<CheckReport>& out, F&& body) {
  try {
    body();
  } catch (const SolverError&) {
    throw;
  } catch (const Error& e) {
    out.push_back(failed_row(s, check, e.what()));
  }
}

void elliptic_rows(const Scenario& s, const std::vector<std::string>& checks, std::vector<CheckReport>& out) {
  const EllipticSolution sol = solve_elliptic(s);
  const ScalarField& u = sol.u;
  const EstimateContext ctx = elliptic_context(s);
  const ModelManifold manifold = scenario_manifold(s);
  const bool case1 = std::isfinite(ctx.A1);
  const double A = case1 ? ctx.A1 : ctx.A2;

  if (s.case_tag == CaseTag::Schrodinger && wants(checks, "schrodinger")) {
    guarded(s, "schrodinger", out, [&] {
      for (auto& r : check_schrodinger(u, s.b, ctx, s.tol_check)) out.push_back(std::move(r));
      CheckReport m = report_from(ctx, "m1_vs_closed_form");
      m.gating = false;
      settle(m, ctx.M, schrodinger_closed_form_M1(ctx.b_bounds), 0.0);
      m.diagnostics.push_back({"closed_form_M", schrodinger_closed_form_M(ctx.b_bounds)});
      out.push_back(std::move(m));
    });
  }
  if (wants(checks, "thm1")) {
    guarded(s, "thm1", out, [&] {
      CheckReport r = check_thm1(u, ctx, s.tol_check);
      r.diagnostics.push_back({"newton_residual", sol.residual});
      r.diagnostics.push_back({"wall_distorted", wall_distorted(u, s.R) ? 1.0 : 0.0});
      out.push_back(std::move(r));
    });
  }
  if (wants(checks, "lemma21")) {
    guarded(s, "lemma21", out, [&] {
      const LemmaMargins m = check_lemma21(u, ctx.samples, A, ctx.M, ctx.K, manifold);
      CheckReport r = lemma_row(ctx, "lemma21", m, s.tol_lemma, u.grid());
      r.A = A;
      out.push_back(std::move(r));
    });
  }
  if (wants(checks, "cor1")) {
    guarded(s, "cor1", out, [&] { out.push_back(check_corollary(u, ctx, s.tol_check)); });
  }
  if (wants(checks, "cutoff")) {
    guarded(s, "cutoff", out, [&] { cutoff_rows(s, ctx, out); });
  }
  if (wants(checks, "diagnostics")) {
    guarded(s, "diagnostics", out, [&] {
      for (auto& r : diagnostic_case_bounds(u, ctx, s.tol_check)) out.push_back(std::move(r));
    });
  }
}

void parabolic_rows(const Scenario& s, const std::vector<std::string>& checks, std::vector<CheckReport>& out) {
  const ParabolicTrajectory traj = solve_parabolic(s);
  const EstimateContext ctx = parabolic_context(s, traj);
  const ModelManifold manifold = scenario_manifold(s);
  const auto times = effective_times(s);
  if (wants(checks, "thm2")) {
    guarded(s, "thm2", out, [&] {
      for (auto& r : check_thm2(traj, ctx, s.a, s.b, times, s.tol_check)) out.push_back(std::move(r));
    });
  }
  if (wants(checks, "lemma31")) {
    for (double t : times) {
      guarded(s, "lemma31", out, [&] {
        const std::size_t m = traj.index_of(t);
        const LemmaMargins lm = check_lemma31(traj, m, s.a, s.b, ctx.A, ctx.M, ctx.D, ctx.K, manifold);
        CheckReport r = lemma_row(ctx, "lemma31", lm, s.tol_lemma, traj.snapshots[m].grid());
        r.gating = false;  // O(tau) time discretisation error, see README
        r.diagnostics.insert(r.diagnostics.begin(), {"t", traj.time(m)});
        out.push_back(std::move(r));
      });
    }
  }
  if (wants(checks, "cutoff")) {
    guarded(s, "cutoff", out, [&] { cutoff_rows(s, ctx, out); });
  }
}

std::string pad(std::size_t k, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t x = count > 0 ? count - 1 : 0; x >= 10; x /= 10) ++width;
  std::string digits = std::to_string(k);
  return std::string(width - std::min(width, digits.size()), '0') + digits;
}

}  // namespace

bool CaseResult::all_passed() const {
  return !solver_failed && std::all_of(rows.begin(), rows.end(), [](const CheckReport& r) { return !r.gating || r.pass; });
}

ModelManifold scenario_manifold(const Scenario& s) { return ModelManifold(s.n, s.warp, s.R); }

RadialGrid scenario_grid(const Scenario& s) { return RadialGrid(2.0 * s.R, s.grid); }

EllipticSolution solve_elliptic(const Scenario& s) {
  return continuation_solve(scenario_manifold(s), scenario_grid(s), s.a, s.b, effective_boundary(s), s.solver,
                            s.ramp_steps);
}

double parabolic_horizon(const Scenario& s) {
  double horizon = s.T;
  for (double t : effective_times(s)) horizon = std::max(horizon, t + 5.0 * s.tau);
  return horizon;
}

ParabolicTrajectory solve_parabolic(const Scenario& s) {
  const RadialGrid grid = scenario_grid(s);
  const double boundary = effective_boundary(s);
  const ScalarField u0 = s.initial ? sample(*s.initial, grid, 0.0) : ScalarField::constant(grid, boundary);
  const ParabolicProblem problem(scenario_manifold(s), grid, s.a, s.b, u0, [boundary](double) { return boundary; },
                                 s.tau, parabolic_horizon(s), s.solver);
  return run(problem);
}

EstimateContext elliptic_context(const Scenario& s) {
  const ModelManifold manifold = scenario_manifold(s);
  const RadialGrid grid = scenario_grid(s);
  const CutoffProfile phi = build_cutoff(s.R);
  EstimateContext ctx;
  ctx.tag = s.case_tag;
  ctx.n = s.n;
  ctx.R = s.R;
  ctx.K = ricci_lower_bound(manifold);
  ctx.C1 = phi.C1();
  ctx.C2 = phi.C2();
  ctx.B = B_constant(s.n, ctx.K, s.R, ctx.C1, ctx.C2);
  ctx.samples = sample_coefficients(s.a, s.b, manifold, grid);
  ctx.a_bounds = coefficient_bounds(s.a, manifold, grid);
  ctx.b_bounds = coefficient_bounds(s.b, manifold, grid);
  const bool case1 = s.case_tag == CaseTag::Thm1Case1 || s.case_tag == CaseTag::Schrodinger ||
                     (s.case_tag == CaseTag::Cor1 && ctx.a_bounds.inf > 0.0);
  if (case1) {
    ctx.A1 = select_A1(ctx.a_bounds);
    ctx.A4 = select_A4(ctx.a_bounds);
    ctx.M = select_M1(ctx.samples, ctx.A1, ctx.K, s.n);
  } else {
    std::tie(ctx.A2, ctx.A3) = select_A2_A3(ctx.a_bounds);
    ctx.M = select_M2(ctx.samples, ctx.A2, ctx.K, s.n);
  }
  return ctx;
}

EstimateContext parabolic_context(const Scenario& s, const ParabolicTrajectory& traj) {
  const ModelManifold manifold = scenario_manifold(s);
  const RadialGrid grid = scenario_grid(s);
  const CutoffProfile phi = build_cutoff(s.R);
  const TimeWindow window = coefficient_window(s.a, s.b, parabolic_horizon(s));
  EstimateContext ctx;
  ctx.tag = CaseTag::Thm2;
  ctx.n = s.n;
  ctx.R = s.R;
  ctx.K = ricci_lower_bound(manifold);
  ctx.C1 = phi.C1();
  ctx.C2 = phi.C2();
  ctx.B = B_constant(s.n, ctx.K, s.R, ctx.C1, ctx.C2);
  ctx.samples = sample_coefficients(s.a, s.b, manifold, grid, window);
  ctx.a_bounds = coefficient_bounds(s.a, manifold, grid, window);
  ctx.b_bounds = coefficient_bounds(s.b, manifold, grid, window);
  ctx.T = parabolic_horizon(s);
  ctx.D = sup_bound_D(traj);
  ctx.A = select_A_parabolic(ctx.samples, ctx.K, ctx.D);
  ctx.M = select_M_parabolic(ctx.samples, ctx.A, ctx.D, s.n);
  return ctx;
}

CaseResult run_case(const Scenario& s, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CaseResult result;
  const auto checks = effective_checks(s);
  try {
    if (s.case_tag == CaseTag::Thm2) {
      parabolic_rows(s, checks, result.rows);
    } else {
      elliptic_rows(s, checks, result.rows);
    }
  } catch (const Error& e) {
    // the solve itself (or a context built from it) failed: one failed row for the case
    result.rows.clear();
    result.rows.push_back(failed_row(s, "solve", e.what()));
    result.solver_failed = e.kind() == ErrorKind::Solver;
  }
  const double ms =
      opts.timing ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count() : 0.0;
  for (auto& r : result.rows) {
    r.case_id = s.id;
    r.grid = s.grid;
    r.tau = s.case_tag == CaseTag::Thm2 ? s.tau : 0.0;
    r.runtime_ms = ms;
  }
  return result;
}

SweepParam parse_sweep_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(0, text, "sweep parameter must look like key=v1,v2,...");
  SweepParam p;
  p.key = text.substr(0, eq);
  const std::string list = text.substr(eq + 1);
  const char sep = list.find(';') != std::string::npos ? ';' : ',';
  std::stringstream in(list);
  std::string v;
  while (std::getline(in, v, sep)) p.values.push_back(v);
  if (p.values.empty()) throw ConfigError(0, p.key, "sweep parameter has no values");
  return p;
}

std::vector<Scenario> expand_sweep(const Scenario& base, const std::vector<SweepParam>& params) {
  std::size_t total = 1;
  for (const auto& p : params) total *= p.values.size();
  std::vector<Scenario> out;
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    Scenario s = base;
    std::size_t rest = k;
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      set_config_value(s, it->key, it->values[rest % it->values.size()]);
      rest /= it->values.size();
    }
    s.id = base.id + "-" + pad(k, total);
    out.push_back(std::move(s));
  }
  return out;
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("GRADLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CaseResult run_sweep(const std::vector<Scenario>& cases, const RunOptions& opts) {
  std::vector<CaseResult> results(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cases.size(); k = next++) results[k] = run_case(cases[k], opts);
  };
  const unsigned count = std::min<std::size_t>(sweep_threads(), std::max<std::size_t>(cases.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CaseResult all;
  for (auto& r : results) {
    all.solver_failed = all.solver_failed || r.solver_failed;
    for (auto& row : r.rows) all.rows.push_back(std::move(row));
  }
  return all;
}

std::string csv_header() { return "case_id,check,n,R,K,C1,C2,B,A,M,lhs_max,rhs,margin,pass,grid,tau,runtime_ms"; }

std::string to_csv(const std::vector<CheckReport>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) {
    out += r.case_id + "," + r.check + "," + std::to_string(r.n);
    for (double v : {r.R, r.K, r.C1, r.C2, r.B, r.A, r.M, r.lhs_max, r.rhs, r.margin}) out += "," + format_number(v);
    out += r.pass ? ",1," : ",0,";
    out += std::to_string(r.grid) + "," + format_number(r.tau) + "," + format_number(r.runtime_ms) + "\n";
  }
  return out;
}

}  // namespace gradlab
