#include <doctest.h>

#include <cmath>

#include "core/cutoff.hpp"
#include "oracles.hpp"

using namespace gradlab;

TEST_SUITE("cutoff") {
  TEST_CASE("profile shape") {
    const CutoffProfile phi(2.0);
    CHECK(phi.value(0.0) == 1.0);
    CHECK(phi.value(2.0) == 1.0);
    CHECK(phi.value(3.0) == doctest::Approx(0.5));  // cos^2(pi/4)
    CHECK(phi.value(4.0) == 0.0);
    CHECK(phi.value(5.0) == 0.0);
    CHECK(phi.C1() == doctest::Approx(M_PI));
    CHECK(phi.C2() == doctest::Approx(M_PI * M_PI / 2.0));
  }

  TEST_CASE("derivatives agree with finite differences inside (R, 2R)") {
    const CutoffProfile phi(1.5);
    auto f = [&](double r) { return phi.value(r); };
    for (double r : {1.6, 2.0, 2.5, 2.9}) {
      CHECK(phi.d1(r) == doctest::Approx(oracle::central_d1(f, r)).epsilon(1e-7));
      CHECK(phi.d2(r) == doctest::Approx(oracle::central_d2(f, r)).epsilon(1e-5));
    }
  }

  TEST_CASE("|phi'|^2 / phi stays under C1^2 / R^2") {
    // closed form of the ratio: (pi/R)^2 sin^2(pi x / 2), x = r/R - 1
    const double R = 1.0;
    const CutoffProfile phi(R);
    for (double r : {1.1, 1.5, 1.9}) {
      const double x = r / R - 1.0;
      const double want = M_PI * M_PI * std::pow(std::sin(M_PI * x / 2.0), 2);
      CHECK(phi.d1(r) * phi.d1(r) / phi.value(r) == doctest::Approx(want).epsilon(1e-12));
    }
  }

  TEST_CASE("certified margins on euclidean and hyperbolic balls") {
    for (double R : {1.0, 5.0, 10.0}) {
      for (int n : {2, 3}) {
        for (const Warp w : {Warp::euclidean(), Warp::hyperbolic(1.0)}) {
          const ModelManifold m(n, w, R);
          const CutoffProfile phi = build_cutoff(R);
          const double K = ricci_lower_bound(m);
          CHECK(verify_cutoff_gradient(phi, m) >= -1e-9);
          CHECK(verify_cutoff_laplacian(phi, m, K) >= -1e-9);
        }
      }
    }
  }

  TEST_CASE("B by hand") {
    // n = 3, K = 0, R = 1: 2 pi^2 + pi^2/2
    CHECK(B_constant(3, 0.0, 1.0, M_PI, M_PI * M_PI / 2.0) == doctest::Approx(2.5 * M_PI * M_PI));
    // n = 2, K = 4, R = 2: (1 + 4) pi^2 + pi^2/2, over 4
    CHECK(B_constant(2, 4.0, 2.0, M_PI, M_PI * M_PI / 2.0) == doctest::Approx(5.5 * M_PI * M_PI / 4.0));
  }

  TEST_CASE("too small B is detected") {
    // pretending K = 0 on hyperbolic space undercounts the drift term once (n-1) pi / 2R exceeds B ~ 1/R^2
    const ModelManifold m(3, Warp::hyperbolic(1.0), 20.0);
    const CutoffProfile phi(20.0);
    CHECK(verify_cutoff_laplacian(phi, m, 0.0) < 0.0);
  }
}
