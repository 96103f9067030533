#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/geometry.hpp"
#include "oracles.hpp"

using namespace gradlab;

TEST_SUITE("geometry") {
  TEST_CASE("warp values match the closed forms") {
    const ModelManifold hyp(3, Warp::hyperbolic(2.0), 1.0);
    const double r = 0.7, s = std::sqrt(2.0);
    const auto v = hyp.warp_at(r);
    CHECK(v.psi == doctest::Approx(std::sinh(s * r) / s).epsilon(1e-14));
    CHECK(v.dpsi == doctest::Approx(std::cosh(s * r)).epsilon(1e-14));
    CHECK(v.ddpsi == doctest::Approx(s * std::sinh(s * r)).epsilon(1e-14));

    const ModelManifold sph(3, Warp::spherical(0.5), 1.0);
    const auto w = sph.warp_at(r);
    const double q = std::sqrt(0.5);
    CHECK(w.psi == doctest::Approx(std::sin(q * r) / q).epsilon(1e-14));

    const ModelManifold cub(2, Warp::cubic(0.1), 1.0);
    auto psi = [](double x) { return x + 0.1 * x * x * x; };
    CHECK(cub.warp_at(r).dpsi == doctest::Approx(oracle::central_d1(psi, r)).epsilon(1e-8));
  }

  TEST_CASE("constant curvature spaces give Ric = (n-1)k exactly") {
    for (int n : {2, 3, 5}) {
      const ModelManifold hyp(n, Warp::hyperbolic(1.0), 2.0);
      for (double r : {0.0, 0.3, 1.7, 4.0}) {
        CHECK(hyp.radial_ricci(r) == doctest::Approx(-(n - 1.0)).epsilon(1e-10));
        CHECK(hyp.tangential_ricci(r) == doctest::Approx(-(n - 1.0)).epsilon(1e-8));
      }
      CHECK(ricci_lower_bound(hyp) == doctest::Approx(n - 1.0).epsilon(1e-8));
      const ModelManifold sph(n, Warp::spherical(0.25), 1.0);
      CHECK(sph.radial_ricci(0.5) == doctest::Approx(0.25 * (n - 1.0)).epsilon(1e-10));
      CHECK(ricci_lower_bound(sph) == 0.0);
      CHECK(ricci_lower_bound(ModelManifold(n, Warp::euclidean(), 3.0)) == 0.0);
    }
  }

  TEST_CASE("cubic warp Ricci bound dominates the sampled eigenvalues") {
    const ModelManifold m(3, Warp::cubic(0.2), 1.0);
    const double K = ricci_lower_bound(m);
    for (int i = 0; i <= 200; ++i) {
      const double r = 2.0 * i / 200.0;
      CHECK(std::min(m.radial_ricci(r), m.tangential_ricci(r)) >= -K - 1e-12);
    }
    CHECK(K > 0.0);
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(ModelManifold(3, Warp::spherical(1.0), 2.0), Error);  // 2R sqrt(k) = 4 > pi
    CHECK_THROWS_AS(ModelManifold(3, Warp::cubic(-1.0), 1.0), Error);
    CHECK_THROWS_AS(ModelManifold(3, Warp::euclidean(), -1.0), Error);
    const ModelManifold m(3, Warp::euclidean(), 1.0);
    CHECK_THROWS_AS(m.warp_at(2.5), Error);
    CHECK_THROWS_AS(m.mean_curvature(0.0), Error);
  }

  TEST_CASE("grid nodes") {
    const RadialGrid g(2.0, 6);
    CHECK(g.size() == 7);
    CHECK(g.node(6) == 2.0);
    CHECK(g.node(3) == doctest::Approx(1.0));
    CHECK(g.last_index_within(1.0) == 3);
    CHECK(g.last_index_within(0.99) == 2);
    CHECK_THROWS_AS(RadialGrid(2.0, 2), Error);
  }

  TEST_CASE("scalar field rejects non-finite values") {
    const RadialGrid g(1.0, 4);
    CHECK_THROWS_AS(ScalarField(g, {1, 2, NAN, 4, 5}), Error);
    CHECK_THROWS_AS(ScalarField(g, {1, 2, 3}), Error);
  }

  TEST_CASE("stencils are exact on quadratics") {
    // r^2 on flat R^n: Delta = 2n everywhere, including the pole and the one-sided end
    for (int n : {2, 3, 4}) {
      const ModelManifold m(n, Warp::euclidean(), 1.0);
      const RadialGrid g(2.0, 16);
      const auto f = ScalarField::from_function(g, [](double r) { return r * r; });
      const auto lap = laplace_beltrami(f, m);
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(lap[i] == doctest::Approx(2.0 * n).epsilon(1e-10));
    }
  }

  TEST_CASE("Laplace-Beltrami converges at second order on hyperbolic space") {
    // cosh r on H^3: cosh'' + 2 coth r sinh = 3 cosh
    auto err = [](int N) {
      const ModelManifold m(3, Warp::hyperbolic(1.0), 1.0);
      const RadialGrid g(2.0, N);
      const auto lap = laplace_beltrami(ScalarField::from_function(g, [](double r) { return std::cosh(r); }), m);
      double e = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, std::abs(lap[i] - 3.0 * std::cosh(g.node(i))));
      return e;
    };
    const double order = std::log2(err(100) / err(200));
    CHECK(order == doctest::Approx(2.0).epsilon(0.1));
  }

  TEST_CASE("hessian and laplacian from radial derivatives") {
    const ModelManifold m(3, Warp::euclidean(), 1.0);
    // w = r^2: w' = 2r, w'' = 2; |D^2 w|^2 = 4 n, Delta w = 2n
    CHECK(hessian_norm_sq(m, 0.5, 1.0, 2.0) == doctest::Approx(12.0));
    CHECK(hessian_norm_sq(m, 0.0, 0.0, 2.0) == doctest::Approx(12.0));
    CHECK(radial_laplacian(m, 0.5, 1.0, 2.0) == doctest::Approx(6.0));
    CHECK(radial_laplacian(m, 0.0, 0.0, 2.0) == doctest::Approx(6.0));
  }

  TEST_CASE("mismatched grid and manifold") {
    const ModelManifold m(3, Warp::euclidean(), 1.0);
    const auto f = ScalarField::constant(RadialGrid(3.0, 16), 1.0);
    CHECK_THROWS_AS(laplace_beltrami(f, m), Error);
  }
}
