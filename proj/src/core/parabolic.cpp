#include "core/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "core/error.hpp"

namespace gradlab {

namespace {

EllipticSolution implicit_step(const ScalarField& u_m, const ParabolicProblem& p, double t_next) {
  require(u_m.grid() == p.grid, ErrorKind::InvalidArgument, "state is not on the problem grid");
  if (!(u_m.min() > 0.0)) fail(ErrorKind::Domain, "parabolic state must stay positive");
  EllipticProblem ep(p.manifold, p.grid, sample(p.a, p.grid, t_next), sample(p.b, p.grid, t_next), p.boundary(t_next),
                     p.options);
  ep.shift = 1.0 / p.tau;
  ep.source.resize(u_m.size());
  for (std::size_t i = 0; i < u_m.size(); ++i) ep.source[i] = u_m[i] / p.tau;
  // warm start from u_m with the new boundary value imposed
  std::vector<double> guess(u_m.values().begin(), u_m.values().end());
  guess.back() = ep.boundary;
  return solve(ep, ScalarField(p.grid, std::move(guess)));
}

}  // namespace

ParabolicProblem::ParabolicProblem(ModelManifold m, RadialGrid g, CoefficientProfile a_profile,
                                   CoefficientProfile b_profile, ScalarField u0,
                                   std::function<double(double)> boundary_value, double tau_, double T_,
                                   SolverOptions opts)
    : manifold(m),
      grid(g),
      a(std::move(a_profile)),
      b(std::move(b_profile)),
      initial(std::move(u0)),
      boundary(std::move(boundary_value)),
      tau(tau_),
      T(T_),
      options(opts) {
  require(std::isfinite(tau) && tau > 0.0, ErrorKind::InvalidArgument, "time step tau must be > 0");
  require(std::isfinite(T) && T > 0.0, ErrorKind::InvalidArgument, "horizon T must be > 0");
  require(initial.grid() == grid, ErrorKind::InvalidArgument, "initial condition is not on the problem grid");
  require(initial.min() > 0.0, ErrorKind::InvalidArgument, "initial condition must be positive");
  require(static_cast<bool>(boundary), ErrorKind::InvalidArgument, "boundary value function missing");
  check_same_grid(initial, manifold);
  a.validate();
  b.validate();
}

int ParabolicProblem::steps() const { return std::max(1, static_cast<int>(std::lround(T / tau))); }

std::size_t ParabolicTrajectory::index_of(double t) const {
  require(!snapshots.empty(), ErrorKind::InvalidArgument, "empty trajectory");
  const double m = std::round(t / tau);
  if (!(m >= 0.0 && m <= static_cast<double>(snapshots.size() - 1))) {
    fail(ErrorKind::Domain, "time " + std::to_string(t) + " outside the trajectory");
  }
  return static_cast<std::size_t>(m);
}

ScalarField step(const ScalarField& u_m, const ParabolicProblem& problem, double t_next) {
  const EllipticSolution s = implicit_step(u_m, problem, t_next);
  return ScalarField(problem.grid, std::vector<double>(s.u.values().begin(), s.u.values().end()), t_next);
}

ParabolicTrajectory run(const ParabolicProblem& problem) {
  ParabolicTrajectory traj;
  traj.tau = problem.tau;
  const int M = problem.steps();
  traj.snapshots.reserve(M + 1);
  traj.snapshots.emplace_back(problem.grid,
                              std::vector<double>(problem.initial.values().begin(), problem.initial.values().end()),
                              0.0);
  for (int m = 1; m <= M; ++m) {
    const double t = m * problem.tau;
    std::optional<EllipticSolution> s;
    try {
      s = implicit_step(traj.snapshots.back(), problem, t);
    } catch (const SolverError& e) {
      throw SolverError("time step " + std::to_string(m) + " (t = " + std::to_string(t) + "): " + e.what());
    }
    traj.step_residuals.push_back(s->residual);
    traj.step_iterations.push_back(s->iterations);
    traj.snapshots.emplace_back(problem.grid, std::vector<double>(s->u.values().begin(), s->u.values().end()), t);
  }
  return traj;
}

ScalarField time_derivative(const ParabolicTrajectory& traj, std::size_t m) {
  const std::size_t count = traj.snapshots.size();
  require(count >= 2, ErrorKind::InvalidArgument, "time derivative needs at least two snapshots");
  require(m < count, ErrorKind::Domain, "snapshot index out of range");
  const auto& grid = traj.snapshots[m].grid();
  const double tau = traj.tau;
  auto f = [&](std::size_t k, std::size_t i) { return std::log(traj.snapshots[k][i]); };
  std::vector<double> ft(grid.size());
  for (std::size_t i = 0; i < ft.size(); ++i) {
    if (m > 0 && m + 1 < count) {
      ft[i] = (f(m + 1, i) - f(m - 1, i)) / (2.0 * tau);
    } else if (count == 2) {
      ft[i] = (f(1, i) - f(0, i)) / tau;
    } else if (m == 0) {
      ft[i] = (-3.0 * f(0, i) + 4.0 * f(1, i) - f(2, i)) / (2.0 * tau);
    } else {
      ft[i] = (3.0 * f(m, i) - 4.0 * f(m - 1, i) + f(m - 2, i)) / (2.0 * tau);
    }
  }
  return ScalarField(grid, std::move(ft), traj.time(m));
}

double sup_bound_D(const ParabolicTrajectory& traj) {
  require(!traj.snapshots.empty(), ErrorKind::InvalidArgument, "empty trajectory");
  double D = traj.snapshots.front().max();
  for (const auto& s : traj.snapshots) D = std::max(D, s.max());
  return D;
}

}  // namespace gradlab
