// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "core/cutoff.hpp"
#include "core/error.hpp"
#include "core/runner.hpp"

using namespace gradlab;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = std::string(GRADLAB_SOURCE_DIR) + "/configs/acceptance/";

struct Outcome {
  bool pass;
  std::string detail;
};

std::set<int> known;  // criteria recorded as not attainable; they still print FAIL
std::set<int> failed;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  if (!o.pass) failed.insert(id);
  const char* tag = o.pass ? (known.count(id) ? "PASS (listed as known failure)" : "PASS") : (known.count(id) ? "FAIL (known)" : "FAIL");
  std::printf("%s AC%-2d %-34s %s\n", tag, id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const CheckReport* row(const CaseResult& r, const std::string& check) {
  for (const auto& x : r.rows)
    if (x.check == check) return &x;
  return nullptr;
}

std::string failing_rows(const CaseResult& r) {
  std::string s;
  for (const auto& x : r.rows)
    if (x.gating && !x.pass) s += " " + x.check + (x.note.empty() ? "" : "(" + x.note + ")");
  return s;
}

struct LemmaConstants {
  double A, M, K;
};

// constants chosen on the coarsest grid, then held fixed so refinement only moves the discretisation
LemmaConstants lemma_constants(Scenario s, int grid) {
  s.grid = grid;
  const auto ctx = elliptic_context(s);
  return {std::isfinite(ctx.A1) ? ctx.A1 : ctx.A2, ctx.M, ctx.K};
}

// min margin of the G inequality at a given grid
double lemma_min_margin(Scenario s, int grid, const LemmaConstants& c, double& scale) {
  s.grid = grid;
  const auto sol = solve_elliptic(s);
  const auto m = scenario_manifold(s);
  const auto samples = sample_coefficients(s.a, s.b, m, scenario_grid(s));
  const auto lm = check_lemma21(sol.u, samples, c.A, c.M, c.K, m);
  scale = lm.scale;
  return lm.min_margin;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome constant_solution() {
  const ModelManifold m(3, Warp::euclidean(), 1.0);
  const RadialGrid g(2.0, 512);
  const auto t0 = std::chrono::steady_clock::now();
  const auto sol = continuation_solve(m, g, CoefficientProfile::constant(2.0), CoefficientProfile::constant(-2.0),
                                      std::exp(1.0), SolverOptions{}, 1);
  const double secs = seconds_since(t0);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(sol.u[i] - std::exp(1.0)));
  return {err <= 1e-10 && secs < 1.0, fmt("sup|u-e| = %.3g (<= 1e-10), %.3f s (< 1 s)", err, secs)};
}

Outcome bochner() {
  // w = cosh r on hyperbolic space n = 3, ball of radius 1 (grid on [0, 2])
  auto err = [](int N) {
    const ModelManifold m(3, Warp::hyperbolic(1.0), 1.0);
    const RadialGrid g(2.0, N);
    return check_bochner(ScalarField::from_function(g, [](double r) { return std::cosh(r); }), m);
  };
  const double e512 = err(512), e1024 = err(1024);
  const double ratio = e512 / e1024;
  return {e1024 <= 1e-4 && ratio >= 3.2 && ratio <= 4.8,
          fmt("w = cosh r, ball R = 1: residual %.3g at N=1024 (<= 1e-4), ratio %.3f (4 +- 20%%)", e1024, ratio)};
}

Outcome cutoff() {
  double worst = INFINITY;
  for (double R : {1.0, 5.0, 10.0})
    for (int n : {2, 3})
      for (const Warp w : {Warp::euclidean(), Warp::hyperbolic(1.0)}) {
        const ModelManifold m(n, w, R);
        const auto phi = build_cutoff(R);
        if (std::abs(phi.C1() - M_PI) > 1e-15 || std::abs(phi.C2() - M_PI * M_PI / 2.0) > 1e-14) return {false, "C1/C2"};
        worst = std::min({worst, verify_cutoff_gradient(phi, m), verify_cutoff_laplacian(phi, m, ricci_lower_bound(m))});
      }
  return {worst >= -1e-9, fmt("min margin %.3g over 12 setups (>= -1e-9)", worst)};
}

Outcome gradient_estimate(const std::string& cfg, bool timed) {
  const auto s = load_config(kConfigs + cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = run_case(s);
  const double secs = seconds_since(t0);
  const auto* r = row(res, "thm1");
  if (!r) return {false, "no thm1 row:" + failing_rows(res)};
  const bool ok = r->margin >= 0.0 && res.all_passed() && (!timed || secs < 10.0);
  return {ok, fmt("margin %.6g (lhs %.6g, rhs %.6g), %.2f s", r->margin, r->lhs_max, r->rhs, secs) +
                  (timed ? " (< 10 s)" : "") + failing_rows(res)};
}

Outcome g_inequality() {
  std::string detail;
  bool ok = true;
  for (const char* cfg : {"thm1_case1.cfg", "thm1_case2.cfg"}) {
    const auto s = load_config(kConfigs + cfg);
    const auto c = lemma_constants(s, 512);
    double sc1, sc2, sc3;
    const double m1 = lemma_min_margin(s, 512, c, sc1);
    const double m2 = lemma_min_margin(s, 1024, c, sc2);
    const double m3 = lemma_min_margin(s, 2048, c, sc3);
    const double d1 = std::abs(m1 - m2), d2 = std::abs(m2 - m3);
    const bool settled = d2 <= 1e-8 * sc3;
    const double order = settled ? INFINITY : std::log2(d1 / d2);
    const bool here = m2 >= -1e-6 * sc2 && m3 >= -1e-6 * sc3 && (settled || order >= 1.0);
    ok = ok && here;
    detail += std::string(cfg) + fmt(": margin %.3g (scale %.3g), order %.2f; ", m2, sc2, order);
  }
  return {ok, detail};
}

Outcome parabolic_estimate() {
  std::string detail;
  bool ok = true;
  for (const char* cfg : {"thm2_heat.cfg", "thm2_modulated.cfg"}) {
    const auto s = load_config(kConfigs + cfg);
    const auto res = run_case(s);
    double worst = INFINITY;
    int rows = 0;
    for (const auto& r : res.rows)
      if (r.check == "thm2") {
        worst = std::min(worst, r.margin);
        ++rows;
      }
    const bool here = res.all_passed() && rows == static_cast<int>(effective_times(s).size()) && worst >= 0.0;
    ok = ok && here;
    detail += s.id + fmt(": %g times, min margin %.6g; ", rows, worst) + failing_rows(res);
  }
  return {ok, detail};
}

Outcome sup_bound() {
  // printed substitution: n = 3, K = 0, A1 = 1, A4 = 2, M = b1 = a1 = 0
  EstimateContext ctx;
  ctx.tag = CaseTag::Cor1;
  ctx.n = 3;
  ctx.K = 0.0;
  ctx.A1 = 1.0;
  ctx.A4 = 2.0;
  ctx.M = 0.0;
  const double e16 = corollary_exponent(ctx);
  bool ok = std::abs(e16 - 16.0) <= 1e-12;
  std::string detail = fmt("substituted exponent %.15g (16); ", e16);

  const auto base = load_config(kConfigs + "cor1_constant.cfg");
  const auto res = run_case(base);
  const auto* c = row(res, "cor1");
  ok = ok && c && c->pass && res.all_passed();
  if (c) detail += fmt("u = e: bound exp(%.6g), margin %.6g; ", std::log(c->rhs), c->margin);

  std::vector<double> rhs;
  for (double R : {5.0, 10.0, 20.0}) {
    auto s = base;
    s.R = R;
    const auto r = run_case(s);
    const auto* t = row(r, "thm1");
    if (!t || !t->pass) return {false, detail + "sweep row failed"};
    rhs.push_back(t->rhs);
  }
  // every R-dependent term scales like 1/R^2 when K = 0
  const double shrink = (rhs[0] - rhs[1]) / (rhs[1] - rhs[2]);
  ok = ok && rhs[0] > rhs[1] && rhs[1] > rhs[2] && std::abs(shrink - 4.0) < 1e-6;
  detail += fmt("thm1 rhs over R=5,10,20: %.6g > %.6g > %.6g (gap ratio %.6g)", rhs[0], rhs[1], rhs[2], shrink);
  return {ok, detail};
}

Outcome schrodinger() {
  bool ok = true;
  std::string detail;
  const auto zero = load_config(kConfigs + "schrodinger_zero.cfg");
  const auto rz = run_case(zero);
  const auto* ell = row(rz, "schrodinger_elliptic_bound");
  const auto* par = row(rz, "schrodinger_parabolic_bound");
  ok = ok && rz.all_passed() && ell && par && std::abs(std::log(ell->rhs) - 16.0) < 1e-9 &&
       std::abs(std::log(par->rhs) - 6.0) < 1e-9;
  if (ell && par) detail += fmt("V=0: exp(%.6g), exp(%.6g); ", std::log(ell->rhs), std::log(par->rhs));

  const auto two = load_config(kConfigs + "schrodinger_constant.cfg");
  const auto sol = solve_elliptic(two);
  double err = 0.0;
  for (std::size_t i = 0; i < sol.u.size(); ++i) err = std::max(err, std::abs(sol.u[i] - std::exp(-1.0)));
  const auto r2 = run_case(two);
  const auto* ell2 = row(r2, "schrodinger_elliptic_bound");
  ok = ok && r2.all_passed() && err <= 1e-10 && ell2 && std::abs(std::log(ell2->rhs) - 16.0) < 1e-9;
  detail += fmt("V=2: |u-1/e| %.2g, exponent %.6g; ", err, ell2 ? std::log(ell2->rhs) : NAN);

  const auto g = load_config(kConfigs + "schrodinger_gaussian.cfg");
  const auto rg = run_case(g);
  ok = ok && rg.all_passed();
  detail += std::string("gaussian V: ") + (rg.all_passed() ? "pass" : "fail" + failing_rows(rg));
  return {ok, detail};
}

Outcome minimality() {
  std::mt19937 rng(20240917);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0, bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Scenario s;
    s.n = 2 + trial % 3;
    s.R = 1.0 + 4.0 * u(rng);
    s.warp = trial % 2 ? Warp::hyperbolic(0.5 + 0.5 * u(rng)) : Warp::euclidean();
    const double sign = trial % 4 < 2 ? 1.0 : -1.0;
    const double base = sign * (1.0 + 2.0 * u(rng));
    s.a = CoefficientProfile::tanh_bump(base, 0.4 * std::abs(base) * u(rng), s.R * u(rng), 0.3 + 0.7 * u(rng));
    s.b = CoefficientProfile::gaussian_bump(4.0 * u(rng) - 2.0, 2.0 * u(rng) - 1.0, s.R * u(rng), 0.3 + 0.7 * u(rng));
    s.grid = 128;
    const auto m = scenario_manifold(s);
    const auto grid = scenario_grid(s);
    const auto samples = sample_coefficients(s.a, s.b, m, grid);
    const auto ab = coefficient_bounds(s.a, m, grid);
    const double K = ricci_lower_bound(m);
    const double A = sign > 0 ? select_A1(ab) : select_A2_A3(ab).first;
    const double M = sign > 0 ? select_M1(samples, A, K, s.n) : select_M2(samples, A, K, s.n);
    ++checked;
    if (thm1_condition_slack(samples, A, K, s.n, M) < 0.0) ++bad;
    if (M > 0.0 && thm1_condition_slack(samples, A, K, s.n, M * (1.0 - 1e-9) - 1e-12) >= 0.0) ++bad;
    const double D = 1.0 + 4.0 * u(rng);
    const double Ap = select_A_parabolic(samples, K, D);
    const double Mp = select_M_parabolic(samples, Ap, D, s.n);
    ++checked;
    if (parabolic_condition_slack(samples, Ap, D, s.n, Mp) < 0.0) ++bad;
    if (parabolic_condition_slack(samples, Ap, D, s.n, Mp - 1e-9 * (1.0 + std::abs(Mp))) >= 0.0) ++bad;
  }
  // Schrodinger: a = 2, A1 = 1, K = 0; parabolic A = 2, D = 1; gaussian V with |grad V| <= 1
  int above = 0;
  double worst_gap = -INFINITY;
  for (int trial = 0; trial < 50; ++trial) {
    const double w0 = 0.5 + u(rng);
    const double amp = (2.0 * u(rng) - 1.0) * w0 * 0.9 * std::sqrt(std::exp(1.0) / 2.0);
    Scenario s;
    s.n = 3;
    s.R = 0.5 + 2.0 * u(rng);
    s.a = CoefficientProfile::constant(2.0);
    s.b = CoefficientProfile::gaussian_bump(4.0 * u(rng) - 2.0, amp, s.R * u(rng), w0);
    s.grid = 256;
    const auto m = scenario_manifold(s);
    const auto grid = scenario_grid(s);
    const auto samples = sample_coefficients(s.a, s.b, m, grid);
    const auto Vb = coefficient_bounds(s.b, m, grid);
    const double M1 = select_M1(samples, 1.0, 0.0, 3);
    const double Mp = select_M_parabolic(samples, 2.0, 1.0, 3);
    const double g1 = M1 - schrodinger_closed_form_M1(Vb), g2 = Mp - schrodinger_closed_form_M(Vb);
    worst_gap = std::max({worst_gap, g1, g2});
    if (g1 > 0.0 || g2 > 0.0) ++above;
  }
  return {bad == 0 && above == 0,
          fmt("%g/%g selections minimal; Schrodinger: %g of 50 above closed form (max excess %.3g)", checked - bad,
              checked, above, worst_gap)};
}

Outcome determinism() {
  const fs::path work = fs::temp_directory_path() / ("gradlab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(work);
  int files = 0, differ = 0;
  std::string detail;
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    if (entry.path().extension() != ".cfg") continue;
    std::string out[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path csv = work / (entry.path().stem().string() + "_" + std::to_string(k) + ".csv");
      const std::string cmd =
          std::string("\"") + GRADLAB_CLI + "\" verify \"" + entry.path().string() + "\" --quiet --out \"" + csv.string() + "\"";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) detail += entry.path().filename().string() + " exit " + std::to_string(rc) + "; ";
      out[k] = read_file(csv);
    }
    ++files;
    if (out[0].empty() || out[0] != out[1]) ++differ;
  }
  fs::remove_all(work);
  return {files > 0 && differ == 0 && detail.empty(),
          fmt("%g configs, %g differing CSV pairs; ", files, differ) + detail};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) == "--known-failure") known.insert(std::atoi(argv[i + 1]));
  }
  criterion(1, "constant solution exactness", constant_solution);
  criterion(2, "Bochner identity", bochner);
  criterion(3, "cutoff certification", cutoff);
  criterion(4, "gradient estimate, positive a", [] { return gradient_estimate("thm1_case1.cfg", true); });
  criterion(5, "gradient estimate, negative a", [] { return gradient_estimate("thm1_case2.cfg", false); });
  criterion(6, "G inequality margins", g_inequality);
  criterion(7, "parabolic estimate", parabolic_estimate);
  criterion(8, "sup bound", sup_bound);
  criterion(9, "Schrodinger bounds", schrodinger);
  criterion(10, "constant selector minimality", minimality);
  criterion(11, "report determinism", determinism);
  std::printf("%zu of 11 criteria failed", failed.size());
  if (!known.empty()) std::printf(" (%zu listed as known)", known.size());
  std::printf("\n");
  // exit status flags any drift from the recorded state, in either direction
  return failed == known ? 0 : 1;
}
