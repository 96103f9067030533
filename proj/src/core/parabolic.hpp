#pragma once

#include <functional>
#include <vector>

#include "core/elliptic.hpp"
#include "core/fields.hpp"
#include "core/geometry.hpp"

namespace gradlab {

/// (Delta - d/dt) u + a u log u + b u = 0 on [0, 2R] x [0, T], u(2R, t) = boundary(t).
struct ParabolicProblem {
  ModelManifold manifold;
  RadialGrid grid;
  CoefficientProfile a;
  CoefficientProfile b;
  ScalarField initial;
  std::function<double(double)> boundary;
  double tau;
  double T;
  SolverOptions options{};

  ParabolicProblem(ModelManifold m, RadialGrid g, CoefficientProfile a_profile, CoefficientProfile b_profile,
                   ScalarField u0, std::function<double(double)> boundary_value, double tau, double T,
                   SolverOptions opts = {});

  /// Number of implicit Euler steps, round(T / tau).
  int steps() const;
};

struct ParabolicTrajectory {
  double tau = 0.0;
  std::vector<ScalarField> snapshots;  // u(., m tau), m = 0..steps
  std::vector<double> step_residuals;  // Newton residual of each step
  std::vector<int> step_iterations;

  double time(std::size_t m) const { return static_cast<double>(m) * tau; }
  /// Snapshot index closest to t; throws when t lies outside the trajectory.
  std::size_t index_of(double t) const;
};

/// One implicit Euler step from u_m to time t_next = t_m + tau, coefficients frozen at t_next.
ScalarField step(const ScalarField& u_m, const ParabolicProblem& problem, double t_next);

ParabolicTrajectory run(const ParabolicProblem& problem);

/// d/dt of f = log(u/D) at snapshot m: central in the interior, second order one-sided at the ends.
/// D cancels, so it is not an argument.
ScalarField time_derivative(const ParabolicTrajectory& trajectory, std::size_t m);

/// max over all snapshots and nodes of u.
double sup_bound_D(const ParabolicTrajectory& trajectory);

}  // namespace gradlab
