#include "core/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/tridiagonal.hpp"

namespace gradlab {

namespace {

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// (n-1) psi'/psi at every node except the pole
std::vector<double> drift_coefficients(const ModelManifold& manifold, const RadialGrid& grid) {
  std::vector<double> c(grid.size(), 0.0);
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = (manifold.dimension() - 1) * manifold.mean_curvature(grid.node(i));
  return c;
}

class Discretization {
 public:
  explicit Discretization(const EllipticProblem& p)
      : p_(p), drift_(drift_coefficients(p.manifold, p.grid)), h_(p.grid.spacing()) {
    require(p.grid.intervals() >= 8, ErrorKind::InvalidArgument, "grid too coarse (need >= 8 intervals)");
    require(p.source.empty() || p.source.size() == p.grid.size(), ErrorKind::InvalidArgument,
            "source length does not match grid");
  }

  std::vector<double> residual(const std::vector<double>& u) const {
    const std::size_t N = u.size() - 1;
    for (double x : u) {
      if (!(x > 0.0)) fail(ErrorKind::Domain, "residual needs u > 0 (log u undefined)");
    }
    const double h2 = h_ * h_;
    std::vector<double> res(N + 1);
    for (std::size_t i = 0; i < N; ++i) {
      double lap;
      if (i == 0) {
        lap = p_.manifold.dimension() * 2.0 * (u[1] - u[0]) / h2;
      } else {
        lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2 + drift_[i] * (u[i + 1] - u[i - 1]) / (2.0 * h_);
      }
      res[i] = lap + reaction(i, u[i]);
    }
    res[N] = u[N] - p_.boundary;
    return res;
  }

  // Largest row magnitude of the discrete operator at u; 8 eps times this is the residual
  // floor roundoff allows, which on fine grids sits above the default tolerance.
  double roundoff_floor(const std::vector<double>& u) const {
    const double h2 = h_ * h_;
    const int n = p_.manifold.dimension();
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const double stencil = i == 0 ? 4.0 * n / h2 : 4.0 / h2 + std::abs(drift_[i]) / h_;
      double row = u[i] * (stencil + std::abs(p_.a[i]) * (std::abs(std::log(u[i])) + 1.0) + std::abs(p_.b[i]) + p_.shift);
      if (!p_.source.empty()) row += std::abs(p_.source[i]);
      s = std::max(s, row);
    }
    return 8.0 * std::numeric_limits<double>::epsilon() * s;
  }

  Tridiagonal jacobian(const std::vector<double>& u) const {
    const std::size_t N = u.size() - 1;
    const double h2 = h_ * h_;
    Tridiagonal J(N + 1);
    const int n = p_.manifold.dimension();
    J.diag[0] = -2.0 * n / h2;
    J.sup[0] = 2.0 * n / h2;
    for (std::size_t i = 1; i < N; ++i) {
      J.sub[i - 1] = 1.0 / h2 - drift_[i] / (2.0 * h_);
      J.diag[i] = -2.0 / h2;
      J.sup[i] = 1.0 / h2 + drift_[i] / (2.0 * h_);
    }
    for (std::size_t i = 0; i < N; ++i) {
      J.diag[i] += p_.a[i] * (std::log(u[i]) + 1.0) + p_.b[i] - p_.shift;
    }
    J.sub[N - 1] = 0.0;
    J.diag[N] = 1.0;
    return J;
  }

 private:
  double reaction(std::size_t i, double u) const {
    double r = p_.a[i] * u * std::log(u) + (p_.b[i] - p_.shift) * u;
    if (!p_.source.empty()) r += p_.source[i];
    return r;
  }

  const EllipticProblem& p_;
  std::vector<double> drift_;
  double h_;
};

}  // namespace

EllipticProblem::EllipticProblem(ModelManifold m, RadialGrid g, ScalarField a_field, ScalarField b_field, double u_D,
                                 SolverOptions opts)
    : manifold(m), grid(g), a(std::move(a_field)), b(std::move(b_field)), boundary(u_D), options(opts) {
  require(std::isfinite(u_D) && u_D > 0.0, ErrorKind::InvalidArgument, "boundary value u_D must be > 0");
  require(a.grid() == grid && b.grid() == grid, ErrorKind::InvalidArgument, "a and b must be sampled on the problem grid");
  check_same_grid(a, manifold);
  require(options.tol > 0.0 && options.max_iter > 0 && options.damping_floor > 0.0 && options.damping_floor < 1.0,
          ErrorKind::InvalidArgument, "invalid solver options");
}

ScalarField residual(const ScalarField& u, const EllipticProblem& problem) {
  require(u.grid() == problem.grid, ErrorKind::InvalidArgument, "u is not on the problem grid");
  const Discretization disc(problem);
  std::vector<double> v(u.values().begin(), u.values().end());
  return ScalarField(problem.grid, disc.residual(v));
}

ScalarField default_initial_guess(const EllipticProblem& problem) {
  double inf_abs = std::abs(problem.a[0]);
  for (std::size_t i = 0; i < problem.a.size(); ++i) inf_abs = std::min(inf_abs, std::abs(problem.a[i]));
  if (inf_abs > 0.0) {
    const double a_mid = 0.5 * (problem.a.max() + problem.a.min());
    const double b_mid = 0.5 * (problem.b.max() + problem.b.min());
    const double guess = std::exp(-b_mid / a_mid);
    if (std::isfinite(guess) && guess > 0.0) return ScalarField::constant(problem.grid, guess);
  }
  return ScalarField::constant(problem.grid, problem.boundary);
}

EllipticSolution solve(const EllipticProblem& problem, const std::optional<ScalarField>& initial) {
  const Discretization disc(problem);
  const ScalarField start = initial ? *initial : default_initial_guess(problem);
  require(start.grid() == problem.grid, ErrorKind::InvalidArgument, "initial guess is not on the problem grid");
  std::vector<double> u(start.values().begin(), start.values().end());
  if (std::any_of(u.begin(), u.end(), [](double x) { return !(x > 0.0); })) {
    fail(ErrorKind::InvalidArgument, "initial guess must be positive");
  }
  const SolverOptions& opt = problem.options;

  std::vector<double> res = disc.residual(u);
  double norm = sup_norm(res);
  int iter = 0;
  while (norm > std::max(opt.tol, disc.roundoff_floor(u))) {
    if (iter >= opt.max_iter) {
      throw SolverError("Newton diverged: residual " + std::to_string(norm) + " after " + std::to_string(iter) +
                        " iterations");
    }
    ++iter;
    std::vector<double> rhs(res.size());
    for (std::size_t i = 0; i < res.size(); ++i) rhs[i] = -res[i];
    const std::vector<double> step = solve_tridiagonal(disc.jacobian(u), std::move(rhs));

    double lambda = 1.0;
    bool positivity_blocked = false;
    std::vector<double> trial(u.size());
    for (;;) {
      if (lambda < opt.damping_floor) {
        if (positivity_blocked) throw SolverError("positivity unrecoverable: step damping hit the floor");
        throw SolverError("Newton stalled: no residual decrease above the damping floor (residual " +
                          std::to_string(norm) + ")");
      }
      bool positive = true;
      for (std::size_t i = 0; i < u.size(); ++i) {
        trial[i] = u[i] + lambda * step[i];
        if (!(trial[i] > 0.0)) positive = false;
      }
      if (!positive) {
        positivity_blocked = true;
        lambda *= 0.5;
        continue;
      }
      positivity_blocked = false;
      std::vector<double> trial_res = disc.residual(trial);
      const double trial_norm = sup_norm(trial_res);
      if (trial_norm < norm) {
        u.swap(trial);
        res = std::move(trial_res);
        norm = trial_norm;
        break;
      }
      lambda *= 0.5;
    }
  }
  return {ScalarField(problem.grid, std::move(u)), norm, iter, {}};
}

EllipticSolution continuation_solve(const ModelManifold& manifold, const RadialGrid& grid,
                                    const CoefficientProfile& a, const CoefficientProfile& b, double boundary,
                                    const SolverOptions& options, int stages) {
  require(stages >= 1, ErrorKind::InvalidArgument, "continuation needs at least one stage");
  auto problem_at = [&](double s) {
    return EllipticProblem(manifold, grid, sample(a.with_amp(s * a.amp), grid), sample(b.with_amp(s * b.amp), grid),
                           boundary, options);
  };
  std::vector<double> stage_res;
  EllipticSolution current = solve(problem_at(0.0));
  stage_res.push_back(current.residual);
  int total_iter = current.iterations;
  double s = 0.0;
  double ds = 1.0 / stages;
  while (s < 1.0) {
    const double next = std::min(1.0, s + ds);
    try {
      EllipticSolution trial = solve(problem_at(next), current.u);
      current = std::move(trial);
      total_iter += current.iterations;
      stage_res.push_back(current.residual);
      s = next;
    } catch (const SolverError&) {
      ds *= 0.5;
      if (ds < 1e-6) throw SolverError("continuation ramp step underflow at amplitude fraction " + std::to_string(s));
    }
  }
  current.iterations = total_iter;
  current.stage_residuals = std::move(stage_res);
  return current;
}

bool wall_distorted(const ScalarField& u, double R) {
  const auto d = radial_derivative(u.values(), u.grid().spacing());
  const std::size_t inner = u.grid().last_index_within(R);
  double in = 0.0, out = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double& slot = i <= inner ? in : out;
    slot = std::max(slot, std::abs(d[i]));
  }
  const double scale = std::max(in, 1e-12 * std::max(1.0, u.max()));
  return out > 10.0 * scale;
}

}  // namespace gradlab
