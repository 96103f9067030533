#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/elliptic.hpp"
#include "core/estimates.hpp"
#include "core/fields.hpp"
#include "core/geometry.hpp"

namespace gradlab {

/// One verification case as read from a config file.
///
///   [geometry]      n, R, warp (euclidean|hyperbolic|spherical|cubic), k
///   [coefficients]  a, b, V, a_modulation, b_modulation, initial, boundary
///   [solver]        grid, tol, max_iter, damping_floor, ramp_steps, tau, T
///   [checks]        id, case, checks, times, tol_check, tol_lemma, report
struct Scenario {
  int n = 3;
  double R = 1.0;
  Warp warp = Warp::euclidean();

  CoefficientProfile a = CoefficientProfile::constant(0.0);
  CoefficientProfile b = CoefficientProfile::constant(0.0);
  bool b_is_V = false;  // b was given as the Schrodinger potential V
  std::optional<CoefficientProfile> initial;
  std::optional<double> boundary;

  int grid = 512;
  SolverOptions solver{};
  int ramp_steps = 1;
  double tau = 1e-3;
  double T = 1.0;

  std::string id = "case";
  CaseTag case_tag = CaseTag::Thm1Case1;
  std::vector<std::string> checks;  // empty: the case's default set
  std::vector<double> times;        // empty: {T/4, T/2, T}
  double tol_check = 1e-6;
  double tol_lemma = 1e-6;
  std::string report;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses config text and validates it; throws ConfigError with line and key.
Scenario parse_config(const std::string& text);
Scenario load_config(const std::string& path);

/// Canonical text with every key written out; numbers with 17 significant digits.
std::string serialize_config(const Scenario& s);

/// Applies one assignment. key is "section.key" or a bare key that is unique across sections.
/// Re-validates the scenario afterwards.
void set_config_value(Scenario& s, const std::string& key, const std::string& value);

void validate_scenario(const Scenario& s);

/// Checks the case runs when the list is left empty.
std::vector<std::string> default_checks(CaseTag tag);
std::vector<std::string> effective_checks(const Scenario& s);
std::vector<double> effective_times(const Scenario& s);

/// Boundary value at 2R: configured value, else exp(-b/a) at 2R when a(2R) != 0, else 1.
double effective_boundary(const Scenario& s);

std::string format_number(double x);
std::string format_profile(const CoefficientProfile& p);
CoefficientProfile parse_profile(const std::string& text);

}  // namespace gradlab
