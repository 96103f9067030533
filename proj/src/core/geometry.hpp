#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gradlab {

/// Warping profile family of a rotationally symmetric model metric dr^2 + psi(r)^2 g_sphere.
/// All families have closed-form derivatives and satisfy psi(0) = 0, psi'(0) = 1.
enum class WarpKind {
  Euclidean,   // psi = r
  Hyperbolic,  // psi = sinh(sqrt(k) r) / sqrt(k)
  Spherical,   // psi = sin(sqrt(k) r) / sqrt(k), needs 2R sqrt(k) < pi
  Cubic,       // psi = r + c r^3, needs 1 + c r^2 > 0 on the ball
};

struct Warp {
  WarpKind kind = WarpKind::Euclidean;
  double param = 0.0;  // k for hyperbolic/spherical, c for cubic

  static Warp euclidean() { return {WarpKind::Euclidean, 0.0}; }
  static Warp hyperbolic(double k) { return {WarpKind::Hyperbolic, k}; }
  static Warp spherical(double k) { return {WarpKind::Spherical, k}; }
  static Warp cubic(double c) { return {WarpKind::Cubic, c}; }

  friend bool operator==(const Warp&, const Warp&) = default;
};

std::string warp_name(WarpKind kind);
std::optional<WarpKind> parse_warp_kind(const std::string& name);

struct WarpValue {
  double psi;
  double dpsi;
  double ddpsi;
};

class ModelManifold {
 public:
  ModelManifold(int n, Warp warp, double R);

  int dimension() const noexcept { return n_; }
  double radius() const noexcept { return R_; }
  double outer_radius() const noexcept { return 2.0 * R_; }
  const Warp& warp() const noexcept { return warp_; }

  /// psi and two derivatives; throws for r outside [0, 2R].
  WarpValue warp_at(double r) const;

  /// psi'/psi = Delta r; only defined for r > 0.
  double mean_curvature(double r) const;

  /// psi''/psi, with its limit at the pole.
  double warp_ratio(double r) const;

  /// (1 - psi'^2)/psi^2, with its limit at the pole.
  double sphere_defect(double r) const;

  /// Ric(d_r, d_r) = -(n-1) psi''/psi.
  double radial_ricci(double r) const { return -(n_ - 1) * warp_ratio(r); }

  /// Ricci eigenvalue on vectors tangent to the geodesic spheres.
  double tangential_ricci(double r) const { return -warp_ratio(r) + (n_ - 2) * sphere_defect(r); }

 private:
  void check_domain(double r) const;

  int n_;
  Warp warp_;
  double R_;
};

WarpValue warp_eval(const ModelManifold& manifold, double r);

/// Nonnegative K with Ric >= -K on B_p(2R): grid infimum of the smallest Ricci eigenvalue
/// over 4096 intervals, widened by the largest neighbour jump (h times the observed Lipschitz bound).
double ricci_lower_bound(const ModelManifold& manifold);

class RadialGrid {
 public:
  RadialGrid(double outer_radius, int intervals);

  int intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(intervals_) + 1; }
  double spacing() const noexcept { return h_; }
  double outer_radius() const noexcept { return outer_; }
  double node(std::size_t i) const noexcept { return i == size() - 1 ? outer_ : static_cast<double>(i) * h_; }

  /// Index of the last node with r <= radius (with a half-ulp-of-h tolerance).
  std::size_t last_index_within(double radius) const;

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  double outer_;
  int intervals_;
  double h_;
};

class ScalarField {
 public:
  ScalarField(RadialGrid grid, std::vector<double> values, std::optional<double> time = std::nullopt);

  static ScalarField constant(const RadialGrid& grid, double value);

  template <class F>
  static ScalarField from_function(const RadialGrid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
    return ScalarField(grid, std::move(v));
  }

  const RadialGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::optional<double> time() const noexcept { return time_; }

  double max() const;
  double min() const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
  std::optional<double> time_;
};

/// First radial derivative: zero at the pole, central in the interior, one-sided second order at 2R.
std::vector<double> radial_derivative(std::span<const double> v, double h);

/// Second radial derivative with the even extension at the pole and a one-sided second order
/// stencil at 2R.
std::vector<double> radial_second_derivative(std::span<const double> v, double h);

/// Discrete Laplace-Beltrami operator of a radial field: v'' + (n-1)(psi'/psi) v', and n v''(0) at the pole.
ScalarField laplace_beltrami(const ScalarField& field, const ModelManifold& manifold);

/// |grad v|^2 = (v')^2 for radial v.
ScalarField radial_gradient_sq(const ScalarField& field, const ModelManifold& manifold);

/// |D^2 w|^2 = (w'')^2 + (n-1)((psi'/psi) w')^2 from radial derivatives; n (w'')^2 at the pole.
double hessian_norm_sq(const ModelManifold& manifold, double r, double d1, double d2);

/// Laplacian from radial derivatives; n w'' at the pole.
double radial_laplacian(const ModelManifold& manifold, double r, double d1, double d2);

void check_same_grid(const ScalarField& field, const ModelManifold& manifold);

}  // namespace gradlab
