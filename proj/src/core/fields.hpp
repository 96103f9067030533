#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace gradlab {

enum class ProfileFamily { Constant, Tanh, Gaussian };

std::string family_name(ProfileFamily family);

/// m(t) = 1 + eps sin(omega t), multiplies the amp term only.
struct Modulation {
  double eps = 0.0;
  double omega = 0.0;

  double value(double t) const;
  double rate(double t) const;
  friend bool operator==(const Modulation&, const Modulation&) = default;
};

/// Radial coefficient: constant c, base + amp tanh((r-c0)/w0), or base + amp exp(-(r-c0)^2/w0^2).
struct CoefficientProfile {
  ProfileFamily family = ProfileFamily::Constant;
  double base = 0.0;
  double amp = 0.0;
  double c0 = 0.0;
  double w0 = 1.0;
  Modulation modulation;

  static CoefficientProfile constant(double c);
  static CoefficientProfile tanh_bump(double base, double amp, double c0, double w0);
  static CoefficientProfile gaussian_bump(double base, double amp, double c0, double w0);

  void validate() const;
  bool time_dependent() const { return modulation.eps != 0.0 && amp != 0.0 && family != ProfileFamily::Constant; }

  /// Same profile with the bump amplitude replaced (continuation ramps).
  CoefficientProfile with_amp(double new_amp) const;

  double value(double r, double t = 0.0) const;
  double d1(double r, double t = 0.0) const;
  double d2(double r, double t = 0.0) const;
  double dt(double r, double t = 0.0) const;

  /// Laplacian on the manifold; n v''(0) at the pole.
  double laplacian(const ModelManifold& manifold, double r, double t = 0.0) const;

  friend bool operator==(const CoefficientProfile&, const CoefficientProfile&) = default;

 private:
  double shape(double x) const;
  double shape_d1(double x) const;
  double shape_d2(double x) const;
};

ScalarField sample(const CoefficientProfile& profile, const RadialGrid& grid, double t = 0.0);
ScalarField sample_gradient_sq(const CoefficientProfile& profile, const RadialGrid& grid, double t = 0.0);
ScalarField sample_laplacian(const CoefficientProfile& profile, const ModelManifold& manifold,
                             const RadialGrid& grid, double t = 0.0);

/// sup of max(g, 0) over the region; throws on an empty region.
double plus_part(std::span<const double> g);
double plus_part(double g);

struct CoefficientBounds {
  double sup = 0.0;
  double inf = 0.0;
  double sup_abs = 0.0;
  double sup_grad_sq = 0.0;
  double inf_lap = 0.0;
  double sup_lap = 0.0;
  double sup_abs_lap = 0.0;
  double sup_abs_dt = 0.0;

  friend bool operator==(const CoefficientBounds&, const CoefficientBounds&) = default;
};

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 0.0;
  int samples = 1;
};

/// Time samples covering [0, max(T, one modulation period)] for a time-dependent profile pair.
TimeWindow coefficient_window(const CoefficientProfile& a, const CoefficientProfile& b, double T);

/// Grid sup/inf of the analytic values and derivatives over nodes x times, each widened by the
/// largest neighbour difference (spatial and temporal) of the sampled quantity.
CoefficientBounds coefficient_bounds(const CoefficientProfile& profile, const ModelManifold& manifold,
                                     const RadialGrid& grid, const TimeWindow& window = {});

/// Per-sample values used by the constant selectors. Layout: index = time_index * nodes + node.
struct CoefficientSamples {
  std::size_t nodes = 0;
  std::vector<double> r;
  std::vector<double> t;
  std::vector<double> a, b, grad_a_sq, grad_b_sq, lap_a, lap_b, a_t;

  std::size_t size() const { return a.size(); }
};

CoefficientSamples sample_coefficients(const CoefficientProfile& a, const CoefficientProfile& b,
                                       const ModelManifold& manifold, const RadialGrid& grid,
                                       const TimeWindow& window = {});

/// Restrict samples to nodes with r <= radius.
CoefficientSamples restrict_samples(const CoefficientSamples& s, double radius);

std::vector<double> window_times(const TimeWindow& window);

}  // namespace gradlab
