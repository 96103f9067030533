#include "core/selftest.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "core/cutoff.hpp"
#include "core/elliptic.hpp"
#include "core/error.hpp"
#include "core/parabolic.hpp"

namespace gradlab {

namespace {

CheckReport row(const std::string& check, int n, double R, double lhs, double rhs, int grid) {
  CheckReport r;
  r.case_id = "selftest";
  r.check = check;
  r.n = n;
  r.R = R;
  r.grid = grid;
  settle(r, lhs, rhs, 0.0);
  return r;
}

// observed order from errors at h and h/2
double order(double coarse, double fine) { return std::log2(coarse / fine); }

double constant_solution_error() {
  const ModelManifold m(3, Warp::euclidean(), 1.0);
  const RadialGrid g(2.0, 512);
  const auto sol = continuation_solve(m, g, CoefficientProfile::constant(2.0), CoefficientProfile::constant(-2.0),
                                      std::exp(1.0), SolverOptions{}, 1);
  double err = 0.0;
  for (std::size_t i = 0; i < sol.u.size(); ++i) err = std::max(err, std::abs(sol.u[i] - std::exp(1.0)));
  return err;
}

double identity_closure() {
  const ModelManifold m(3, Warp::hyperbolic(1.0), 1.0);
  const RadialGrid g(2.0, 256);
  const auto a = CoefficientProfile::tanh_bump(2.0, 0.5, 1.0, 0.5);
  const auto b = CoefficientProfile::gaussian_bump(-2.0, 0.5, 0.0, 0.5);
  const auto sol = continuation_solve(m, g, a, b, std::exp(1.0), SolverOptions{}, 1);
  const ScalarField af = sample(a, g);
  const std::vector<double> avec(af.values().begin(), af.values().end());
  const double A = 0.75, M = 0.4;
  const auto d = derive_elliptic(sol.u, avec, A, M);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.G.size(); ++i) {
    const double back = d.G[i] - (avec[i] + A) * d.w[i] - M;
    worst = std::max(worst, std::abs(back - d.grad_w_sq[i]) / (1.0 + std::abs(d.G[i])));
  }
  return worst;
}

double laplacian_error(int N) {
  const ModelManifold m(3, Warp::hyperbolic(1.0), 1.0);
  const RadialGrid g(2.0, N);
  const auto w = ScalarField::from_function(g, [](double r) { return std::cosh(r); });
  const auto lap = laplace_beltrami(w, m);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.node(i);
    // cosh'' + 2 coth(r) sinh = cosh + 2 cosh; 3 cosh(0) at the pole
    err = std::max(err, std::abs(lap[i] - 3.0 * std::cosh(r)));
  }
  return err;
}

double bochner_residual(int N) {
  const ModelManifold m(3, Warp::hyperbolic(1.0), 1.0);
  const RadialGrid g(2.0, N);
  return check_bochner(ScalarField::from_function(g, [](double r) { return std::cosh(r); }), m);
}

// radius-1 ball keeps the first Dirichlet eigenvalue (pi^2) well above sup a
double lemma21_min(int N) {
  const ModelManifold m(3, Warp::euclidean(), 0.5);
  const RadialGrid g(1.0, N);
  const auto a = CoefficientProfile::tanh_bump(2.0, 0.5, 0.5, 0.25);
  const auto b = CoefficientProfile::gaussian_bump(0.0, 0.5, 0.0, 0.5);
  const auto sol = continuation_solve(m, g, a, b, 1.0, SolverOptions{}, 1);
  const auto s = sample_coefficients(a, b, m, g);
  const auto bounds = coefficient_bounds(a, m, g);
  const double A1 = select_A1(bounds);
  const double M = select_M1(s, A1, 0.0, 3);
  return check_lemma21(sol.u, s, A1, M, 0.0, m).min_margin;
}

ScalarField heat_at_one(double tau) {
  const ModelManifold m(3, Warp::euclidean(), 2.0);
  const RadialGrid g(4.0, 128);
  const auto u0 = sample(CoefficientProfile::gaussian_bump(0.1, 1.0, 0.0, 1.0), g);
  const double edge = u0[g.size() - 1];
  const ParabolicProblem p(m, g, CoefficientProfile::constant(0.0), CoefficientProfile::constant(0.0), u0,
                           [edge](double) { return edge; }, tau, 0.25);
  return run(p).snapshots.back();
}

double max_diff(const ScalarField& x, const ScalarField& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

}  // namespace

std::vector<CheckReport> run_selftest() {
  std::vector<CheckReport> out;
  auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      CheckReport r = row(name, 0, 0.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 0);
      r.note = e.what();
      out.push_back(std::move(r));
    }
  };

  guarded("constant_solution", [&] { out.push_back(row("constant_solution", 3, 1.0, constant_solution_error(), 1e-10, 512)); });
  guarded("identity_closure", [&] { out.push_back(row("identity_closure", 3, 1.0, identity_closure(), 1e-12, 256)); });
  guarded("laplacian_order", [&] {
    const double e1 = laplacian_error(128), e2 = laplacian_error(256);
    CheckReport r = row("laplacian_order", 3, 1.0, 1.8, order(e1, e2), 256);
    r.diagnostics = {{"error_coarse", e1}, {"error_fine", e2}};
    out.push_back(std::move(r));
  });
  guarded("bochner_order", [&] {
    const double e1 = bochner_residual(512), e2 = bochner_residual(1024);
    CheckReport r = row("bochner_order", 3, 1.0, 1.8, order(e1, e2), 1024);
    r.diagnostics = {{"residual_coarse", e1}, {"residual_fine", e2}};
    out.push_back(std::move(r));
  });
  guarded("lemma21_convergence", [&] {
    const double m1 = lemma21_min(128), m2 = lemma21_min(256), m3 = lemma21_min(512);
    const double d1 = std::abs(m1 - m2), d2 = std::abs(m2 - m3);
    // settled to roundoff counts as converged
    const double observed = d2 <= 1e-10 * (1.0 + std::abs(m3)) ? 99.0 : order(d1, d2);
    CheckReport r = row("lemma21_convergence", 3, 0.5, 1.0, observed, 512);
    r.diagnostics = {{"margin_128", m1}, {"margin_256", m2}, {"margin_512", m3}};
    out.push_back(std::move(r));
  });
  guarded("implicit_euler_order", [&] {
    const auto u1 = heat_at_one(1.0 / 64), u2 = heat_at_one(1.0 / 128), u3 = heat_at_one(1.0 / 256);
    const double d1 = max_diff(u1, u2), d2 = max_diff(u2, u3);
    CheckReport r = row("implicit_euler_order", 3, 2.0, 0.8, order(d1, d2), 128);
    r.diagnostics = {{"diff_coarse", d1}, {"diff_fine", d2}};
    out.push_back(std::move(r));
  });
  guarded("cutoff_margins", [&] {
    const ModelManifold m(2, Warp::hyperbolic(1.0), 1.0);
    const CutoffProfile phi = build_cutoff(1.0);
    const double K = ricci_lower_bound(m);
    const double worst = std::min(verify_cutoff_gradient(phi, m), verify_cutoff_laplacian(phi, m, K));
    CheckReport r = row("cutoff_margins", 2, 1.0, 0.0, worst, 4096);
    r.tolerance = 1e-9;
    r.pass = worst >= -1e-9;
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace gradlab
