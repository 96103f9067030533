#pragma once

#include <string>
#include <vector>

#include "core/elliptic.hpp"
#include "core/estimates.hpp"
#include "core/parabolic.hpp"
#include "core/scenario.hpp"
#include "core/verify.hpp"

namespace gradlab {

struct RunOptions {
  bool timing = false;  // fill runtime_ms; off keeps reports byte-deterministic
};

struct CaseResult {
  std::vector<CheckReport> rows;
  bool solver_failed = false;

  bool all_passed() const;
};

ModelManifold scenario_manifold(const Scenario& s);
RadialGrid scenario_grid(const Scenario& s);

EllipticSolution solve_elliptic(const Scenario& s);
/// Runs to the check horizon max(T, latest check time + 5 tau).
ParabolicTrajectory solve_parabolic(const Scenario& s);
double parabolic_horizon(const Scenario& s);

/// Constants for the elliptic cases (thm1, cor1, schrodinger) on the scenario grid.
EstimateContext elliptic_context(const Scenario& s);
/// Constants for thm2; D from the trajectory, coefficients sampled over the run horizon.
EstimateContext parabolic_context(const Scenario& s, const ParabolicTrajectory& traj);

/// Solves and runs every check of the scenario. Solver failures become a failed "solve" row.
CaseResult run_case(const Scenario& s, const RunOptions& opts = {});

struct SweepParam {
  std::string key;
  std::vector<std::string> values;
};

/// "key=v1,v2,..."; values split on ';' instead when one is present (profiles contain commas).
SweepParam parse_sweep_param(const std::string& text);

/// Cartesian product of the parameter values, last parameter fastest. Case ids get a zero-padded suffix.
std::vector<Scenario> expand_sweep(const Scenario& base, const std::vector<SweepParam>& params);

/// Runs the cases on up to sweep_threads() workers; rows come back in case order.
CaseResult run_sweep(const std::vector<Scenario>& cases, const RunOptions& opts = {});

/// GRADLAB_THREADS if set and positive, else hardware concurrency (at least 1).
unsigned sweep_threads();

std::string csv_header();
std::string to_csv(const std::vector<CheckReport>& rows);

}  // namespace gradlab
