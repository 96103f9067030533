#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/runner.hpp"
#include "core/verify.hpp"

using namespace gradlab;

namespace {

Scenario constant_scenario(double a, double b) {
  Scenario s;
  s.n = 3;
  s.R = 1.0;
  s.a = CoefficientProfile::constant(a);
  s.b = CoefficientProfile::constant(b);
  s.grid = 128;
  s.case_tag = a > 0 ? CaseTag::Thm1Case1 : CaseTag::Thm1Case2;
  return s;
}

double bochner_error(int N) {
  const ModelManifold m(3, Warp::hyperbolic(1.0), 1.0);
  const RadialGrid g(2.0, N);
  return check_bochner(ScalarField::from_function(g, [](double r) { return std::log(1.0 + r * r / 4.0) + 0.3 * std::cos(r); }), m);
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("settle") {
    CheckReport r;
    settle(r, 2.0, 1.0, 0.5);
    CHECK(r.margin == -1.0);
    CHECK_FALSE(r.pass);
    settle(r, 1.2, 1.0, 0.5);
    CHECK(r.pass);
    settle(r, NAN, 1.0, 0.5);
    CHECK_FALSE(r.pass);
  }

  TEST_CASE("Bochner residual is second order") {
    const double e1 = bochner_error(256), e2 = bochner_error(512);
    CHECK(e2 < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
  }

  TEST_CASE("Bochner residual vanishes for w = r^2 on flat space") {
    // every stencil is exact on quadratics and |grad w|^2 = 4 r^2 is quadratic too
    const ModelManifold m(3, Warp::euclidean(), 1.0);
    const RadialGrid g(2.0, 64);
    CHECK(check_bochner(ScalarField::from_function(g, [](double r) { return r * r; }), m) < 1e-9);
  }

  TEST_CASE("G inequality margin at a constant solution") {
    // u = e, a = 2, b = -2, A = 1, M = 0, K = 0, n = 3: Delta G = 0 and the right side is -9 by hand
    const auto s = constant_scenario(2.0, -2.0);
    const auto m = scenario_manifold(s);
    const auto g = scenario_grid(s);
    const auto samples = sample_coefficients(s.a, s.b, m, g);
    const auto lm = check_lemma21(ScalarField::constant(g, std::exp(1.0)), samples, 1.0, 0.0, 0.0, m);
    CHECK(lm.min_margin == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(lm.nodes.front() == 3);
    CHECK(lm.nodes.back() == static_cast<std::size_t>(g.intervals() - 3));
  }

  TEST_CASE("G inequality holds on a solved bump problem") {
    Scenario s = constant_scenario(2.0, 0.0);
    s.R = 0.5;
    s.a = CoefficientProfile::tanh_bump(2.0, 0.5, 0.5, 0.25);
    s.b = CoefficientProfile::gaussian_bump(0.0, 0.5, 0.0, 0.5);
    s.boundary = 1.0;
    s.grid = 512;
    const auto sol = solve_elliptic(s);
    const auto ctx = elliptic_context(s);
    const auto lm = check_lemma21(sol.u, ctx.samples, ctx.A1, ctx.M, ctx.K, scenario_manifold(s));
    CHECK(lm.min_margin >= -1e-6 * lm.scale);
  }

  TEST_CASE("gradient estimate row at u = e") {
    const auto s = constant_scenario(2.0, -2.0);
    const auto ctx = elliptic_context(s);
    CHECK(ctx.A1 == 1.0);
    CHECK(ctx.M == 0.0);
    const auto g = scenario_grid(s);
    const auto r = check_thm1(ScalarField::constant(g, std::exp(1.0)), ctx, 1e-6);
    // |grad w|^2 + (A + a) w = 3
    CHECK(r.lhs_max == doctest::Approx(3.0));
    CHECK(r.rhs == doctest::Approx(rhs_thm1_case1(ctx)));
    CHECK(r.pass);
    CHECK(r.check == "thm1");
    auto bad = ctx;
    bad.A1 = 1.5;  // a >= 2 A1 no longer holds
    CHECK_THROWS_AS(check_thm1(ScalarField::constant(g, std::exp(1.0)), bad, 1e-6), Error);
  }

  TEST_CASE("sup and inf bound rows") {
    auto s = constant_scenario(2.0, -2.0);
    s.case_tag = CaseTag::Cor1;
    const auto ctx = elliptic_context(s);
    const auto g = scenario_grid(s);
    const auto r = check_corollary(ScalarField::constant(g, std::exp(1.0)), ctx, 1e-6);
    CHECK(r.lhs_max == doctest::Approx(std::exp(1.0)));
    CHECK(r.rhs == doctest::Approx(std::exp(64.0 / 3.0)));
    CHECK(r.pass);
    // negative a: a log u + b = 0 with a = b = -2 gives u = 1/e
    auto t = constant_scenario(-2.0, -2.0);
    t.case_tag = CaseTag::Cor1;
    const auto c2 = elliptic_context(t);
    const auto low = check_corollary(ScalarField::constant(g, std::exp(-1.0)), c2, 1e-6);
    CHECK(low.rhs == doctest::Approx(std::exp(-1.0)));
    CHECK(low.lhs_max == doctest::Approx(corollary_bound(c2)));
    CHECK(low.pass);
  }

  TEST_CASE("Schrodinger rows for V = 0") {
    Scenario s = constant_scenario(2.0, 0.0);
    s.case_tag = CaseTag::Schrodinger;
    s.b_is_V = true;
    const auto ctx = elliptic_context(s);
    const auto rows = check_schrodinger(ScalarField::constant(scenario_grid(s), 1.0), s.b, ctx, 1e-6);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].rhs == doctest::Approx(std::exp(16.0)));
    CHECK(rows[1].rhs == doctest::Approx(std::exp(6.0)));
    CHECK(rows[2].lhs_max == doctest::Approx(std::exp(-16.0)));
    for (const auto& r : rows) CHECK(r.pass);
  }

  TEST_CASE("case diagnostics are reported but not gating") {
    const auto s = constant_scenario(2.0, -2.0);
    const auto ctx = elliptic_context(s);
    const auto rows = diagnostic_case_bounds(ScalarField::constant(scenario_grid(s), std::exp(1.0)), ctx, 1e-6);
    REQUIRE_FALSE(rows.empty());
    for (const auto& r : rows) CHECK_FALSE(r.gating);
  }

  TEST_CASE("parabolic rows on a heat run") {
    Scenario s;
    s.n = 3;
    s.R = 2.0;
    s.case_tag = CaseTag::Thm2;
    s.initial = CoefficientProfile::gaussian_bump(0.1, 1.0, 0.0, 1.0);
    s.grid = 128;
    s.tau = 0.01;
    s.T = 0.5;
    s.times = {0.25, 0.5};
    const auto traj = solve_parabolic(s);
    const auto ctx = parabolic_context(s, traj);
    CHECK(ctx.D == doctest::Approx(1.1));
    const auto rows = check_thm2(traj, ctx, s.a, s.b, s.times, 1e-6);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
      CHECK(r.pass);
      CHECK(r.lhs_max < r.rhs);
    }
    // D below sup u breaks 0 < u <= D
    auto low = ctx;
    low.D = 0.5;
    CHECK_THROWS_AS(check_thm2(traj, low, s.a, s.b, s.times, 1e-6), Error);
    CHECK_THROWS_AS(derive_parabolic(traj, 5, s.a, s.b, ctx.A, ctx.M, 0.5), Error);
    const auto lm = check_lemma31(traj, traj.index_of(0.25), s.a, s.b, ctx.A, ctx.M, ctx.D, ctx.K, scenario_manifold(s));
    CHECK(std::isfinite(lm.min_margin));
  }
}
