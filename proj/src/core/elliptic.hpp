#pragma once

#include <optional>
#include <vector>

#include "core/fields.hpp"
#include "core/geometry.hpp"

namespace gradlab {

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 50;
  double damping_floor = 9.3132257461547852e-10;  // 2^-30

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

/// Delta u + a u log u + (b - shift) u + source = 0 on [0, 2R], u'(0) = 0, u(2R) = boundary.
/// shift and source are zero for the elliptic equation; the implicit Euler step sets
/// shift = 1/tau and source = u_m / tau.
struct EllipticProblem {
  ModelManifold manifold;
  RadialGrid grid;
  ScalarField a;
  ScalarField b;
  double boundary;
  SolverOptions options{};
  double shift = 0.0;
  std::vector<double> source{};

  EllipticProblem(ModelManifold m, RadialGrid g, ScalarField a_field, ScalarField b_field, double u_D,
                  SolverOptions opts = {});
};

struct EllipticSolution {
  ScalarField u;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> stage_residuals{};
};

/// Node-wise discrete residual; the last node carries u_N - u_D. Throws for u <= 0.
ScalarField residual(const ScalarField& u, const EllipticProblem& problem);

/// exp(-b/a) with a, b at their midpoint values when inf |a| > 0, else the boundary value.
ScalarField default_initial_guess(const EllipticProblem& problem);

/// Damped Newton, converged when the residual is below max(tol, 8 eps x largest operator row at u);
/// throws SolverError on divergence, unrecoverable positivity or a singular Jacobian.
EllipticSolution solve(const EllipticProblem& problem, const std::optional<ScalarField>& initial = std::nullopt);

/// Ramps the bump amplitudes of a and b from 0 to their targets over `stages` warm-started solves,
/// halving the ramp step after a failed stage. Throws when the step falls below 1e-6.
EllipticSolution continuation_solve(const ModelManifold& manifold, const RadialGrid& grid,
                                    const CoefficientProfile& a, const CoefficientProfile& b, double boundary,
                                    const SolverOptions& options, int stages);

/// True when the outer shell (R, 2R] carries a gradient spike above 10x the largest |u'| on B_p(R).
bool wall_distorted(const ScalarField& u, double R);

}  // namespace gradlab
