#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/fields.hpp"

namespace gradlab {

enum class CaseTag { Thm1Case1, Thm1Case2, Thm2, Cor1, Schrodinger };

std::string case_name(CaseTag tag);
std::optional<CaseTag> parse_case(const std::string& name);

/// All constants of one verification case. Constants that do not apply to the case are NaN.
struct EstimateContext {
  CaseTag tag = CaseTag::Thm1Case1;
  int n = 2;
  double K = 0.0;
  double R = 1.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double B = 0.0;
  double A1, A2, A3, A4, A, M, D, T;
  CoefficientSamples samples;  // a, b and derivatives over B_p(2R) (x time samples)
  CoefficientBounds a_bounds;
  CoefficientBounds b_bounds;

  EstimateContext();
};

double select_A1(const CoefficientBounds& a);
std::pair<double, double> select_A2_A3(const CoefficientBounds& a);
double select_A4(const CoefficientBounds& a);

/// c2 y^2 + c1 y + c0 >= 0 in y = x - shift, with c2 >= 0.
struct QuadraticCondition {
  double shift, c2, c1, c0;
  double operator()(double x) const {
    const double y = x - shift;
    return (c2 * y + c1) * y + c0;
  }
};

/// Smallest x >= lower satisfying every condition, found by sweeping the forbidden intervals between
/// real roots, then nudged upward by ulps until all conditions hold in floating point.
double smallest_feasible(double lower, const std::vector<QuadraticCondition>& conditions);

/// Per-node conditions for M1 (A = A1 > 0) or M2 (A = A2 < 0):
///   2(M-b)^2/n + (A+a)(M-b) + (2-2A)M + 2KM - |grad a|^2 - |grad b|^2 >= 0
///   4(M-b)A/n + (2K+2)(A+a) + Delta a >= 0 (A > 0), <= 0 (A < 0)
struct ThmOneConditions {
  std::vector<QuadraticCondition> quadratic;
  std::vector<double> linear_lower;  // M >= value, one per node
};
ThmOneConditions thm1_conditions(const CoefficientSamples& s, double A, double K, int n);
double select_M1(const CoefficientSamples& s, double A1, double K, int n);
double select_M2(const CoefficientSamples& s, double A2, double K, int n);

/// Largest violation (negative = violated) of the M1/M2 conditions at M; >= 0 means admissible.
double thm1_condition_slack(const CoefficientSamples& s, double A, double K, int n, double M);

double select_A_parabolic(const CoefficientSamples& s, double K, double D);

/// Conditions: M + b >= 0, M - a log D >= 0 and
///   2(M - a log D)^2/n + 2a(M+b) - (A+a)(a log D + b) + 2 a_t log D + 2 Delta b
///     - |grad b|^2 - (1 + |log D|)|grad a|^2 >= 0
double select_M_parabolic(const CoefficientSamples& s, double A, double D, int n);
double parabolic_condition_slack(const CoefficientSamples& s, double A, double D, int n, double M);

double rhs_thm1_case1(const EstimateContext& ctx);
double rhs_thm1_case2(const EstimateContext& ctx);
double rhs_thm2(const EstimateContext& ctx, double t);

/// Corollary exponent; case 1 gives an upper bound exp(value), case 2 a lower bound exp(value).
double corollary_exponent(const EstimateContext& ctx);
double corollary_bound(const EstimateContext& ctx);

struct SchrodingerBounds {
  double exponent_elliptic;   // (1/3){16n + 8 sup|V| + (8/3) sup|grad V|^2 - 8 inf V}
  double exponent_parabolic;  // 2n + sup|Delta V| + sup|grad V|/2 + 2 sup|V|
  double bound_elliptic;
  double bound_parabolic;
};
SchrodingerBounds schrodinger_bounds(const CoefficientBounds& V, int n);
/// Pointwise exponent with -8V(x) in place of its worst case.
double schrodinger_pointwise_exponent(const CoefficientBounds& V, int n, double V_at_x);

/// The M1 and M choices printed for the Schrodinger setting (a = 2, K = 0, b = V).
double schrodinger_closed_form_M1(const CoefficientBounds& V);
double schrodinger_closed_form_M(const CoefficientBounds& V);

/// Case-level bounds on G over B_p(R), each the max of the sub-variants of that case.
struct CaseBound {
  std::string name;
  double value;
};
std::vector<CaseBound> case_bounds(const EstimateContext& ctx);

}  // namespace gradlab
