#include "core/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace gradlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
double composite_plus(std::size_t count, F&& g) {
  require(count > 0, ErrorKind::InvalidArgument, "plus_part over an empty region");
  double m = 0.0;
  for (std::size_t i = 0; i < count; ++i) m = std::max(m, g(i));
  return m;
}

QuadraticCondition at_least(double value) { return {value, 0.0, 1.0, 0.0}; }

}  // namespace

std::string case_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::Thm1Case1: return "thm1-case1";
    case CaseTag::Thm1Case2: return "thm1-case2";
    case CaseTag::Thm2: return "thm2";
    case CaseTag::Cor1: return "cor1";
    case CaseTag::Schrodinger: return "schrodinger";
  }
  return "unknown";
}

std::optional<CaseTag> parse_case(const std::string& name) {
  for (auto t : {CaseTag::Thm1Case1, CaseTag::Thm1Case2, CaseTag::Thm2, CaseTag::Cor1, CaseTag::Schrodinger}) {
    if (case_name(t) == name) return t;
  }
  return std::nullopt;
}

EstimateContext::EstimateContext()
    : A1(kNaN), A2(kNaN), A3(kNaN), A4(kNaN), A(kNaN), M(kNaN), D(kNaN), T(kNaN) {}

double select_A1(const CoefficientBounds& a) {
  if (!(a.inf > 0.0)) {
    fail(ErrorKind::Hypothesis, "case 1 needs a >= 2 A1 > 0, but inf a = " + std::to_string(a.inf));
  }
  return a.inf / 2.0;
}

std::pair<double, double> select_A2_A3(const CoefficientBounds& a) {
  if (!(a.sup < 0.0)) {
    fail(ErrorKind::Hypothesis, "case 2 needs A3 <= a <= 2 A2 < 0, but sup a = " + std::to_string(a.sup));
  }
  return {a.sup / 2.0, a.inf};
}

double select_A4(const CoefficientBounds& a) {
  if (!(a.inf > 0.0)) fail(ErrorKind::Hypothesis, "A4 is defined for positive a only");
  return a.sup;
}

double smallest_feasible(double lower, const std::vector<QuadraticCondition>& conditions) {
  require(std::isfinite(lower), ErrorKind::InvalidArgument, "lower bound must be finite");
  std::vector<std::pair<double, double>> forbidden;
  for (const auto& c : conditions) {
    if (c.c2 < 0.0) fail(ErrorKind::InvalidArgument, "condition must open upward");
    if (c.c2 == 0.0) {
      if (c.c1 > 0.0) {
        lower = std::max(lower, c.shift - c.c0 / c.c1);
      } else if (c.c1 == 0.0) {
        if (c.c0 < 0.0) fail(ErrorKind::Hypothesis, "constant condition can never hold");
      } else {
        fail(ErrorKind::InvalidArgument, "decreasing linear condition has no smallest solution");
      }
      continue;
    }
    const double disc = c.c1 * c.c1 - 4.0 * c.c2 * c.c0;
    if (!(disc > 0.0)) continue;
    const double q = -0.5 * (c.c1 + std::copysign(std::sqrt(disc), c.c1));
    double y1 = q / c.c2;
    double y2 = q != 0.0 ? c.c0 / q : -y1;
    if (y1 > y2) std::swap(y1, y2);
    forbidden.emplace_back(c.shift + y1, c.shift + y2);
  }
  std::sort(forbidden.begin(), forbidden.end());
  double x = lower;
  for (const auto& [r1, r2] : forbidden) {
    if (r1 >= x) break;
    if (r2 > x) x = r2;
  }
  require(std::isfinite(x), ErrorKind::Domain, "no finite feasible constant");
  // roots carry rounding error; step up until every condition holds as evaluated
  double step = std::max(std::abs(x), 1.0) * std::numeric_limits<double>::epsilon();
  for (int k = 0; k < 200; ++k) {
    bool ok = true;
    for (const auto& c : conditions) {
      if (c(x) < 0.0) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
    x += step;
    step *= 2.0;
  }
  fail(ErrorKind::Domain, "constant selection did not converge");
}

ThmOneConditions thm1_conditions(const CoefficientSamples& s, double A, double K, int n) {
  require(A != 0.0 && std::isfinite(A), ErrorKind::InvalidArgument, "A must be finite and non-zero");
  ThmOneConditions out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = s.a[i], b = s.b[i];
    const double g = s.grad_a_sq[i] + s.grad_b_sq[i];
    const double lin = 2.0 - 2.0 * A + 2.0 * K;
    // in y = M - b: (2/n) y^2 + (A+a) y + (2-2A+2K)(y+b) - g
    out.quadratic.push_back({b, 2.0 / n, (A + a) + lin, lin * b - g});
    const double c = (2.0 * K + 2.0) * (A + a) + s.lap_a[i];
    out.linear_lower.push_back(b - n * c / (4.0 * A));
  }
  return out;
}

namespace {

std::vector<QuadraticCondition> thm1_all(const CoefficientSamples& s, double A, double K, int n) {
  std::vector<QuadraticCondition> all = thm1_conditions(s, A, K, n).quadratic;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double c = (2.0 * K + 2.0) * (A + s.a[i]) + s.lap_a[i];
    // sign chosen so the condition reads "increasing in M, >= 0"
    const double sgn = A > 0.0 ? 1.0 : -1.0;
    all.push_back({s.b[i], 0.0, sgn * 4.0 * A / n, sgn * c});
  }
  all.push_back(at_least(0.0));
  return all;
}

std::vector<QuadraticCondition> parabolic_all(const CoefficientSamples& s, double A, double D, int n) {
  require(D > 0.0, ErrorKind::InvalidArgument, "D must be > 0");
  const double logD = std::log(D);
  std::vector<QuadraticCondition> all;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = s.a[i], b = s.b[i];
    const double L = a * logD;
    all.push_back(at_least(-b));
    all.push_back(at_least(L));
    // in y = M - L: (2/n) y^2 + 2a (y + L + b) - (A+a)(L+b) + rest
    const double rest = 2.0 * s.a_t[i] * logD + 2.0 * s.lap_b[i] - s.grad_b_sq[i] -
                        (1.0 + std::abs(logD)) * s.grad_a_sq[i];
    all.push_back({L, 2.0 / n, 2.0 * a, (a - A) * (L + b) + rest});
  }
  return all;
}

double min_slack(const std::vector<QuadraticCondition>& all, double M) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : all) m = std::min(m, c(M));
  return m;
}

}  // namespace

double select_M1(const CoefficientSamples& s, double A1, double K, int n) {
  require(A1 > 0.0, ErrorKind::Hypothesis, "select_M1 needs A1 > 0");
  return smallest_feasible(0.0, thm1_all(s, A1, K, n));
}

double select_M2(const CoefficientSamples& s, double A2, double K, int n) {
  require(A2 < 0.0, ErrorKind::Hypothesis, "select_M2 needs A2 < 0");
  return smallest_feasible(0.0, thm1_all(s, A2, K, n));
}

double thm1_condition_slack(const CoefficientSamples& s, double A, double K, int n, double M) {
  return min_slack(thm1_all(s, A, K, n), M);
}

double select_A_parabolic(const CoefficientSamples& s, double K, double D) {
  require(D > 0.0, ErrorKind::InvalidArgument, "D must be > 0");
  const double a_plus = composite_plus(s.size(), [&](std::size_t i) { return s.a[i]; });
  return std::max(a_plus + 1.0, 2.0 * K + 2.0 + std::abs(std::log(D)));
}

double select_M_parabolic(const CoefficientSamples& s, double A, double D, int n) {
  const auto all = parabolic_all(s, A, D, n);
  double lower = -std::numeric_limits<double>::infinity();
  for (const auto& c : all) {
    if (c.c2 == 0.0) lower = std::max(lower, c.shift);
  }
  return smallest_feasible(lower, all);
}

double parabolic_condition_slack(const CoefficientSamples& s, double A, double D, int n, double M) {
  return min_slack(parabolic_all(s, A, D, n), M);
}

double rhs_thm1_case1(const EstimateContext& ctx) {
  const auto& s = ctx.samples;
  const double A1 = ctx.A1;
  require(A1 > 0.0, ErrorKind::InvalidArgument, "case 1 context needs A1 > 0");
  const std::size_t N = s.size();
  const double a2 = composite_plus(N, [&](std::size_t i) { return s.a[i] * s.a[i] / (A1 * A1); });
  const double ratio = composite_plus(N, [&](std::size_t i) { return s.a[i] / A1; });
  const double mb = composite_plus(N, [&](std::size_t i) { return ctx.M - s.b[i]; });
  const double lap = composite_plus(N, [&](std::size_t i) { return s.lap_a[i] / A1; });
  const double ap = composite_plus(N, [&](std::size_t i) { return s.a[i]; });
  const int n = ctx.n;
  const double c = ctx.C1 * ctx.C1 / (ctx.R * ctx.R);
  return n * (2.0 * ctx.B + 3.0 * n * a2 * c + (3.0 * ctx.K + 3.0) * ratio) +
         n * (8.0 / n * mb + lap + 5.0 * ap);
}

double rhs_thm1_case2(const EstimateContext& ctx) {
  const auto& s = ctx.samples;
  const double A2 = ctx.A2;
  require(A2 < 0.0, ErrorKind::InvalidArgument, "case 2 context needs A2 < 0");
  const std::size_t N = s.size();
  const double a2 = composite_plus(N, [&](std::size_t i) { return s.a[i] * s.a[i] / (A2 * A2); });
  const double ratio = composite_plus(N, [&](std::size_t i) { return s.a[i] / A2; });
  const double mb = composite_plus(N, [&](std::size_t i) { return ctx.M - s.b[i]; });
  const double lap = composite_plus(N, [&](std::size_t i) { return s.lap_a[i] / A2; });
  const double neg = composite_plus(N, [&](std::size_t i) { return -1.5 * s.a[i]; });
  const int n = ctx.n;
  const double c = ctx.C1 * ctx.C1 / (ctx.R * ctx.R);
  return n * (2.0 * ctx.B + 3.0 * n * a2 * c + (3.0 * ctx.K + 3.0) * ratio) +
         n * (8.0 / n * mb + lap + neg);
}

double rhs_thm2(const EstimateContext& ctx, double t) {
  require(t > 0.0, ErrorKind::Domain, "rhs_thm2 needs t > 0");
  require(ctx.D > 0.0, ErrorKind::InvalidArgument, "parabolic context needs D > 0");
  const auto& s = ctx.samples;
  const std::size_t N = s.size();
  const double logD = std::log(ctx.D);
  const double ap = composite_plus(N, [&](std::size_t i) { return s.a[i]; });
  require(ctx.A > ap, ErrorKind::Hypothesis, "A must be strictly larger than [a]+");
  const double mla = composite_plus(N, [&](std::size_t i) { return ctx.M - s.a[i] * logD; });
  const double drive = composite_plus(N, [&](std::size_t i) { return s.lap_a[i] + s.a_t[i]; });
  const double bracket = plus_part(-(ctx.A - 2.0 * ctx.K - 2.0 - std::abs(logD)));
  const int n = ctx.n;
  return 4.0 * n / t + 4.0 * n * (ap + ctx.B + n * ctx.C1 * ctx.C1 / (ctx.R * ctx.R) + 2.0 * mla / n) +
         4.0 * n * (0.5 * bracket + drive / (4.0 * (ctx.A - ap)));
}

double corollary_exponent(const EstimateContext& ctx) {
  const int n = ctx.n;
  const double b1 = ctx.b_bounds.inf;
  const double a1 = ctx.a_bounds.sup_abs_lap;
  if (std::isfinite(ctx.A1)) {
    require(ctx.A1 > 0.0 && std::isfinite(ctx.A4), ErrorKind::InvalidArgument, "case 1 corollary needs A1, A4");
    const double A1 = ctx.A1, A4 = ctx.A4;
    return n * ((ctx.K + 1.0) * A4 / (A1 * A1) + 8.0 * (ctx.M - b1) / (3.0 * n * A1) + a1 / (3.0 * A1 * A1) +
                5.0 * A4 / (3.0 * A1));
  }
  require(ctx.A2 < 0.0 && std::isfinite(ctx.A3), ErrorKind::InvalidArgument, "case 2 corollary needs A2, A3");
  const double A2 = ctx.A2, A3 = ctx.A3;
  return n * ((ctx.K + 1.0) * A3 / (A2 * A2) + 8.0 * (ctx.M - b1) / (3.0 * n * A2) - a1 / (3.0 * A2 * A2) -
              A3 / (2.0 * A2));
}

double corollary_bound(const EstimateContext& ctx) { return std::exp(corollary_exponent(ctx)); }

SchrodingerBounds schrodinger_bounds(const CoefficientBounds& V, int n) {
  require(n >= 2, ErrorKind::InvalidArgument, "n must be >= 2");
  SchrodingerBounds out{};
  out.exponent_elliptic = (16.0 * n + 8.0 * V.sup_abs + (8.0 / 3.0) * V.sup_grad_sq - 8.0 * V.inf) / 3.0;
  out.exponent_parabolic = 2.0 * n + V.sup_abs_lap + 0.5 * std::sqrt(V.sup_grad_sq) + 2.0 * V.sup_abs;
  out.bound_elliptic = std::exp(out.exponent_elliptic);
  out.bound_parabolic = std::exp(out.exponent_parabolic);
  return out;
}

double schrodinger_pointwise_exponent(const CoefficientBounds& V, int n, double V_at_x) {
  return (16.0 * n + 8.0 * V.sup_abs + (8.0 / 3.0) * V.sup_grad_sq - 8.0 * V_at_x) / 3.0;
}

double schrodinger_closed_form_M1(const CoefficientBounds& V) { return V.sup_abs + V.sup_grad_sq / 3.0; }

double schrodinger_closed_form_M(const CoefficientBounds& V) {
  return 0.5 * V.sup_abs_lap + 0.25 * std::sqrt(V.sup_grad_sq) + V.sup_abs;
}

std::vector<CaseBound> case_bounds(const EstimateContext& ctx) {
  const auto& s = ctx.samples;
  const std::size_t N = s.size();
  const int n = ctx.n;
  const double K = ctx.K, B = ctx.B;
  const double c = ctx.C1 * ctx.C1 / (ctx.R * ctx.R);
  const double ap = composite_plus(N, [&](std::size_t i) { return s.a[i]; });
  const double mb = composite_plus(N, [&](std::size_t i) { return ctx.M - s.b[i]; });
  const double lap_plus = composite_plus(N, [&](std::size_t i) { return s.lap_a[i]; });
  std::vector<CaseBound> out;
  if (ctx.tag == CaseTag::Thm1Case1 || (ctx.tag == CaseTag::Cor1 && std::isfinite(ctx.A1))) {
    const double A1 = ctx.A1;
    const double Aa = composite_plus(N, [&](std::size_t i) { return A1 + s.a[i]; });
    const double base = B + 3.0 * n * ap * c / A1 + 2.0 * K + 2.0 * ap + 2.0 + 4.0 * mb / n;
    out.push_back({"diag_case1", 2.0 * n * base});
    out.push_back({"diag_case2", 2.0 * n * (base + A1)});
    const double v230 = n * (B + n * c + 4.0 * mb / n + 2.0 * K + 2.0 * ap + 2.0);
    const double v231 = n * ((A1 + ap) * (A1 + ap) * c / (3.0 * A1 * A1) + 4.0 * mb / n +
                             (2.0 * K + 2.0) * Aa / A1 + lap_plus / A1);
    out.push_back({"diag_case3", std::max(v230, v231)});
  } else if (ctx.tag == CaseTag::Thm1Case2 || (ctx.tag == CaseTag::Cor1 && std::isfinite(ctx.A2))) {
    const double A2 = ctx.A2;
    const double Aa = composite_plus(N, [&](std::size_t i) { return A2 + s.a[i]; });
    out.push_back({"diag_case4", 2.0 * n * (B + 3.0 * n * ap * c / A2 + 2.0 * K + 2.0 + 4.0 * mb / n)});
    const double v238 = n * (B + n * c + 4.0 * mb / n + 2.0 * K + 2.0 * ap + 2.0);
    const double v242 = n * ((A2 + ap) * (A2 + ap) * c / (3.0 * A2 * A2) + 4.0 * mb / n +
                             (2.0 * K + 2.0) * Aa / A2 + lap_plus / A2);
    const double v239 = v242 - n * Aa;
    out.push_back({"diag_case5", std::max(v238, v239)});
    out.push_back({"diag_case6", std::max(v238, v242)});
  }
  return out;
}

}  // namespace gradlab
