#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/cutoff.hpp"
#include "core/error.hpp"

namespace gradlab {

namespace {

constexpr std::size_t kLemmaSkip = 3;  // nodes dropped next to each end of the grid

std::vector<double> laplacian_of(const std::vector<double>& v, const ModelManifold& manifold, const RadialGrid& grid) {
  const auto lap = laplace_beltrami(ScalarField(grid, v), manifold);
  return {lap.values().begin(), lap.values().end()};
}

std::vector<double> square(std::vector<double> v) {
  for (double& x : v) x *= x;
  return v;
}

double sum_abs(std::initializer_list<double> terms) {
  double s = 0.0;
  for (double t : terms) s += std::abs(t);
  return s;
}

void finish_margins(LemmaMargins& out) {
  out.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < out.margin.size(); ++k) {
    if (out.margin[k] < out.min_margin) {
      out.min_margin = out.margin[k];
      out.argmin = out.nodes[k];
    }
  }
  if (out.margin.empty()) out.min_margin = 0.0;
}

}  // namespace

CheckReport report_from(const EstimateContext& ctx, const std::string& check) {
  CheckReport r;
  r.check = check;
  r.n = ctx.n;
  r.R = ctx.R;
  r.K = ctx.K;
  r.C1 = ctx.C1;
  r.C2 = ctx.C2;
  r.B = ctx.B;
  switch (ctx.tag) {
    case CaseTag::Thm1Case1: r.A = ctx.A1; break;
    case CaseTag::Thm1Case2: r.A = ctx.A2; break;
    case CaseTag::Cor1: r.A = std::isfinite(ctx.A1) ? ctx.A1 : ctx.A2; break;
    case CaseTag::Schrodinger: r.A = ctx.A1; break;
    case CaseTag::Thm2: r.A = ctx.A; break;
  }
  r.M = ctx.M;
  return r;
}

void settle(CheckReport& r, double lhs, double rhs, double tolerance) {
  r.lhs_max = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.margin) && r.margin >= -tolerance;
}

EllipticDerived derive_elliptic(const ScalarField& u, const std::vector<double>& a, double A, double M) {
  require(a.size() == u.size(), ErrorKind::InvalidArgument, "coefficient length does not match u");
  EllipticDerived d;
  d.w.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) fail(ErrorKind::Domain, "u must be positive to take log u");
    d.w[i] = std::log(u[i]);
  }
  d.dw = radial_derivative(d.w, u.grid().spacing());
  d.grad_w_sq = square(d.dw);
  d.G.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) d.G[i] = d.grad_w_sq[i] + (a[i] + A) * d.w[i] + M;
  return d;
}

ParabolicDerived derive_parabolic(const ParabolicTrajectory& traj, std::size_t m, const CoefficientProfile& a,
                                  const CoefficientProfile& b, double A, double M, double D) {
  require(m < traj.snapshots.size(), ErrorKind::Domain, "snapshot index out of range");
  const ScalarField& u = traj.snapshots[m];
  if (u.max() > D * (1.0 + 1e-12)) fail(ErrorKind::Hypothesis, "0 < u <= D violated: sup u exceeds D");
  ParabolicDerived d;
  d.t = traj.time(m);
  const auto& grid = u.grid();
  d.f.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) d.f[i] = std::log(u[i] / D);
  d.df = radial_derivative(d.f, grid.spacing());
  d.grad_f_sq = square(d.df);
  const ScalarField ft = time_derivative(traj, m);
  d.f_t.assign(ft.values().begin(), ft.values().end());
  d.F.resize(u.size());
  d.h.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = grid.node(i);
    d.F[i] = d.t * (d.grad_f_sq[i] + (A + a.value(r, d.t)) * d.f[i] + 2.0 * (M + b.value(r, d.t)) - 2.0 * d.f_t[i]);
    d.h[i] = d.F[i] != 0.0 ? d.grad_f_sq[i] / d.F[i] : 0.0;
  }
  return d;
}

double check_bochner(const ScalarField& w, const ModelManifold& manifold) {
  check_same_grid(w, manifold);
  const RadialGrid& grid = w.grid();
  require(grid.intervals() >= 8, ErrorKind::InvalidArgument, "grid too coarse (need >= 8 intervals)");
  const double h = grid.spacing();
  const auto d1 = radial_derivative(w.values(), h);
  const auto d2 = radial_second_derivative(w.values(), h);
  const auto lap_grad = laplacian_of(square(d1), manifold, grid);
  const auto lap_w = laplace_beltrami(w, manifold);
  const auto grad_lap = radial_derivative(lap_w.values(), h);
  const int n = manifold.dimension();
  double worst = 0.0;
  const std::size_t N = grid.intervals();
  for (std::size_t i = 2; i + 2 <= N; ++i) {
    const double r = grid.node(i);
    const double hess = hessian_norm_sq(manifold, r, d1[i], d2[i]);
    const double ric = -(n - 1) * manifold.warp_ratio(r) * d1[i] * d1[i];
    const double res = lap_grad[i] - 2.0 * d1[i] * grad_lap[i] - 2.0 * hess - 2.0 * ric;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

LemmaMargins check_lemma21(const ScalarField& u, const CoefficientSamples& s, double A, double M, double K,
                           const ModelManifold& manifold) {
  check_same_grid(u, manifold);
  require(s.nodes == u.size() && s.size() == u.size(), ErrorKind::InvalidArgument,
          "lemma check needs static coefficient samples on the solution grid");
  const int n = manifold.dimension();
  const RadialGrid& grid = u.grid();
  const EllipticDerived d = derive_elliptic(u, s.a, A, M);
  const auto lapG = laplacian_of(d.G, manifold, grid);
  const auto dG = radial_derivative(d.G, grid.spacing());
  LemmaMargins out;
  const std::size_t N = grid.intervals();
  for (std::size_t i = kLemmaSkip; i + kLemmaSkip <= N; ++i) {
    const double G = d.G[i], w = d.w[i], a = s.a[i], b = s.b[i];
    const double t1 = 2.0 * G * G / n;
    const double t2 = -2.0 * dG[i] * d.dw[i];
    const double t3 = G * (-4.0 * A * w / n + 4.0 * (b - M) / n - 2.0 * K - 2.0 * a - 2.0);
    const double t4 = (4.0 * (M - b) * A / n + (2.0 * K + 2.0) * (A + a) + s.lap_a[i]) * w;
    const double t5 = 2.0 * A * A * w * w / n - A * (A + a) * w;
    const double t6 = 2.0 * (b - M) * (b - M) / n + (A + a) * (M - b);
    const double t7 = (2.0 - 2.0 * A) * M + 2.0 * K * M - s.grad_a_sq[i] - s.grad_b_sq[i];
    const double rhs = t1 + t2 + t3 + t4 + t5 + t6 + t7;
    out.nodes.push_back(i);
    out.margin.push_back(lapG[i] - rhs);
    out.scale = std::max(out.scale, 1.0 + std::abs(lapG[i]) + sum_abs({t1, t2, t3, t4, t5, t6, t7}));
  }
  finish_margins(out);
  return out;
}

LemmaMargins check_lemma31(const ParabolicTrajectory& traj, std::size_t m, const CoefficientProfile& a,
                           const CoefficientProfile& b, double A, double M, double D, double K,
                           const ModelManifold& manifold) {
  require(m >= 2 && m + 2 < traj.snapshots.size(), ErrorKind::Domain,
          "lemma check needs two snapshots on each side of the check time");
  const ParabolicDerived now = derive_parabolic(traj, m, a, b, A, M, D);
  const ParabolicDerived before = derive_parabolic(traj, m - 1, a, b, A, M, D);
  const ParabolicDerived after = derive_parabolic(traj, m + 1, a, b, A, M, D);
  const RadialGrid& grid = traj.snapshots[m].grid();
  check_same_grid(traj.snapshots[m], manifold);
  const int n = manifold.dimension();
  const double t = now.t;
  const double logD = std::log(D);
  const auto lapF = laplacian_of(now.F, manifold, grid);
  const auto dF = radial_derivative(now.F, grid.spacing());
  struct Node {
    std::size_t i;
    double left, rhs, terms;
  };
  std::vector<Node> nodes;
  double scale = 1.0;
  const std::size_t N = grid.intervals();
  for (std::size_t i = kLemmaSkip; i + kLemmaSkip <= N; ++i) {
    const double r = grid.node(i);
    const double F = now.F[i], f = now.f[i], h = now.h[i];
    const double av = a.value(r, t), bv = b.value(r, t);
    const double lap_a = a.laplacian(manifold, r, t), lap_b = b.laplacian(manifold, r, t);
    const double a_t = a.dt(r, t);
    const double ga = a.d1(r, t), gb = b.d1(r, t);
    const double Ft = (after.F[i] - before.F[i]) / (2.0 * traj.tau);
    const double mla = M - av * logD;
    const double p = 1.0 + h * t;
    const double t1 = t * ((A - 2.0 * K - 2.0 - std::abs(logD)) * h * F + p * p * F * F / (2.0 * n * t * t) -
                           2.0 * p * mla * F / (n * t));
    const double t2 = t * f * (p * (av - A) * F / (n * t) + lap_a + a_t + 2.0 * (A - av) * mla / n);
    const double t3 = t * (2.0 * av * (M + bv) + 2.0 * a_t * logD + 2.0 * lap_b + 2.0 * mla * mla / n);
    const double t4 = -F / t - av * F;
    const double t5 = -t * ((A + av) * (av * logD + bv) + gb * gb + (1.0 + std::abs(logD)) * ga * ga);
    const double t6 = -2.0 * now.df[i] * dF[i];
    const double left = lapF[i] - Ft;
    const double terms = sum_abs({t1, t2, t3, t4, t5, t6});
    nodes.push_back({i, left, t1 + t2 + t3 + t4 + t5 + t6, terms});
    scale = std::max(scale, 1.0 + std::abs(lapF[i]) + std::abs(Ft) + terms);
  }
  LemmaMargins out;
  out.scale = scale;
  const double floor = 1e-8 * scale;
  for (const auto& nd : nodes) {
    if (!(now.F[nd.i] > floor)) continue;
    out.nodes.push_back(nd.i);
    out.margin.push_back(nd.left - nd.rhs);
  }
  finish_margins(out);
  return out;
}

CheckReport check_thm1(const ScalarField& u, const EstimateContext& ctx, double tol_rel) {
  const bool case1 = ctx.tag == CaseTag::Thm1Case1 || (ctx.tag != CaseTag::Thm1Case2 && std::isfinite(ctx.A1));
  const double Ai = case1 ? ctx.A1 : ctx.A2;
  const auto& s = ctx.samples;
  require(s.nodes == u.size() && s.size() == u.size(), ErrorKind::InvalidArgument,
          "theorem check needs static coefficient samples on the solution grid");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (case1 ? !(s.a[i] >= 2.0 * Ai) : !(s.a[i] <= 2.0 * Ai && s.a[i] >= ctx.A3)) {
      fail(ErrorKind::Hypothesis, "sampled a violates the case hypothesis at r = " + std::to_string(s.r[i]));
    }
  }
  const EllipticDerived d = derive_elliptic(u, s.a, Ai, 0.0);
  const std::size_t last = u.grid().last_index_within(ctx.R);
  double lhs = -std::numeric_limits<double>::infinity();
  std::size_t at = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    const double v = d.grad_w_sq[i] + (Ai + s.a[i]) * d.w[i];
    if (v > lhs) {
      lhs = v;
      at = i;
    }
  }
  const double rhs = case1 ? rhs_thm1_case1(ctx) : rhs_thm1_case2(ctx);
  CheckReport r = report_from(ctx, "thm1");
  r.A = Ai;
  settle(r, lhs, rhs, tol_rel * (1.0 + std::abs(rhs)));
  r.diagnostics.push_back({"r_at_max", u.grid().node(at)});
  return r;
}

std::vector<CheckReport> check_thm2(const ParabolicTrajectory& traj, const EstimateContext& ctx,
                                    const CoefficientProfile& a, const CoefficientProfile& b,
                                    const std::vector<double>& times, double tol_rel) {
  std::vector<CheckReport> out;
  const double D = ctx.D;
  if (sup_bound_D(traj) > D * (1.0 + 1e-12)) fail(ErrorKind::Hypothesis, "D is below sup u");
  for (double t : times) {
    const std::size_t m = traj.index_of(t);
    require(m >= 1 && m + 1 < traj.snapshots.size(), ErrorKind::Domain,
            "check time " + std::to_string(t) + " needs snapshots on both sides");
    const double tm = traj.time(m);
    const ParabolicDerived d = derive_parabolic(traj, m, a, b, ctx.A, ctx.M, D);
    const RadialGrid& grid = traj.snapshots[m].grid();
    const std::size_t last = grid.last_index_within(ctx.R);
    double lhs = -std::numeric_limits<double>::infinity();
    double sign_term = -std::numeric_limits<double>::infinity();
    bool positive_Aa = true;
    std::size_t at = 0;
    for (std::size_t i = 0; i <= last; ++i) {
      const double av = a.value(grid.node(i), tm);
      const double v = d.grad_f_sq[i] + (ctx.A + av) * d.f[i] - 2.0 * d.f_t[i];
      if (v > lhs) {
        lhs = v;
        at = i;
      }
      if (!(ctx.A + av > 0.0)) positive_Aa = false;
      sign_term = std::max(sign_term, (ctx.A + av) * d.f[i]);
    }
    if (positive_Aa && sign_term > 0.0) {
      fail(ErrorKind::Domain, "(A+a) f > 0 with f <= 0 and A + a > 0: bookkeeping error");
    }
    const double rhs = rhs_thm2(ctx, tm);
    CheckReport r = report_from(ctx, "thm2");
    settle(r, lhs, rhs, tol_rel * (1.0 + std::abs(rhs)));
    r.diagnostics.push_back({"t", tm});
    r.diagnostics.push_back({"r_at_max", grid.node(at)});
    r.diagnostics.push_back({"D", D});
    r.diagnostics.push_back({"max_Aa_f", sign_term});
    out.push_back(std::move(r));
  }
  return out;
}

CheckReport check_corollary(const ScalarField& u, const EstimateContext& ctx, double tol_rel) {
  const bool case1 = std::isfinite(ctx.A1);
  const double exponent = corollary_exponent(ctx);
  const double bound = std::exp(exponent);
  const auto& s = ctx.samples;
  const double b1 = ctx.b_bounds.inf;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.b[i] < b1) fail(ErrorKind::Hypothesis, "b >= b1 violated");
    if (std::abs(s.lap_a[i]) > ctx.a_bounds.sup_abs_lap) fail(ErrorKind::Hypothesis, "|Delta a| <= a1 violated");
  }
  const std::size_t last = u.grid().last_index_within(ctx.R / 2.0);
  double hi = u[0], lo = u[0];
  for (std::size_t i = 0; i <= last; ++i) {
    hi = std::max(hi, u[i]);
    lo = std::min(lo, u[i]);
  }
  CheckReport r = report_from(ctx, "cor1");
  if (case1) {
    settle(r, hi, bound, tol_rel * (1.0 + std::abs(bound)));
  } else {
    settle(r, bound, lo, tol_rel * (1.0 + std::abs(bound)));
  }
  r.diagnostics.push_back({"exponent", exponent});
  return r;
}

std::vector<CheckReport> check_schrodinger(const ScalarField& u, const CoefficientProfile& V,
                                           const EstimateContext& ctx, double tol_rel) {
  const auto bounds = schrodinger_bounds(ctx.b_bounds, ctx.n);
  const std::size_t last = u.grid().last_index_within(ctx.R);
  double sup_u = u[0];
  double ratio = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    sup_u = std::max(sup_u, u[i]);
    const double e = schrodinger_pointwise_exponent(ctx.b_bounds, ctx.n, V.value(u.grid().node(i)));
    ratio = std::max(ratio, u[i] / std::exp(e));
  }
  std::vector<CheckReport> out;
  CheckReport ell = report_from(ctx, "schrodinger_elliptic_bound");
  settle(ell, sup_u, bounds.bound_elliptic, tol_rel * (1.0 + bounds.bound_elliptic));
  ell.diagnostics.push_back({"exponent", bounds.exponent_elliptic});
  ell.diagnostics.push_back({"tighter", bounds.exponent_elliptic <= bounds.exponent_parabolic ? 1.0 : 0.0});
  out.push_back(std::move(ell));
  CheckReport par = report_from(ctx, "schrodinger_parabolic_bound");
  par.A = 2.0;
  settle(par, sup_u, bounds.bound_parabolic, tol_rel * (1.0 + bounds.bound_parabolic));
  par.diagnostics.push_back({"exponent", bounds.exponent_parabolic});
  par.diagnostics.push_back({"tighter", bounds.exponent_parabolic < bounds.exponent_elliptic ? 1.0 : 0.0});
  out.push_back(std::move(par));
  CheckReport pw = report_from(ctx, "schrodinger_pointwise");
  settle(pw, ratio, 1.0, tol_rel * 2.0);
  out.push_back(std::move(pw));
  return out;
}

std::vector<CheckReport> diagnostic_case_bounds(const ScalarField& u, const EstimateContext& ctx, double tol_rel) {
  const auto bounds = case_bounds(ctx);
  if (bounds.empty()) return {};
  const bool case1 = bounds.front().name == "diag_case1";
  const double A = case1 ? ctx.A1 : ctx.A2;
  const auto& s = ctx.samples;
  const EllipticDerived d = derive_elliptic(u, s.a, A, ctx.M);
  const std::size_t last = u.grid().last_index_within(ctx.R);
  const int n = ctx.n;
  // which of the three w-ranges a node falls in
  auto which = [&](std::size_t i) -> std::size_t {
    const double w = d.w[i];
    const double edge = n * (A + s.a[i]) / (2.0 * A);
    if (case1) return w >= edge ? 0 : (w >= 0.0 ? 1 : 2);
    if (w <= 0.0) return 0;
    return w <= edge ? 1 : 2;
  };
  std::vector<double> lhs(3, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> count(3, 0);
  double g_max = -std::numeric_limits<double>::infinity();
  std::size_t g_arg = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    const std::size_t k = which(i);
    lhs[k] = std::max(lhs[k], d.G[i]);
    ++count[k];
    if (d.G[i] > g_max) {
      g_max = d.G[i];
      g_arg = i;
    }
  }
  const double binding = static_cast<double>(which(g_arg) + (case1 ? 1 : 4));
  std::vector<CheckReport> out;
  for (std::size_t k = 0; k < 3; ++k) {
    if (count[k] == 0) continue;
    CheckReport r = report_from(ctx, bounds[k].name);
    r.gating = false;
    settle(r, lhs[k], bounds[k].value, tol_rel * (1.0 + std::abs(bounds[k].value)));
    r.diagnostics.push_back({"nodes", static_cast<double>(count[k])});
    r.diagnostics.push_back({"binding_case", binding});
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gradlab
