#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace gradlab {

namespace {

constexpr int kRicciSamples = 4096;

}  // namespace

std::string warp_name(WarpKind kind) {
  switch (kind) {
    case WarpKind::Euclidean: return "euclidean";
    case WarpKind::Hyperbolic: return "hyperbolic";
    case WarpKind::Spherical: return "spherical";
    case WarpKind::Cubic: return "cubic";
  }
  return "unknown";
}

std::optional<WarpKind> parse_warp_kind(const std::string& name) {
  for (auto k : {WarpKind::Euclidean, WarpKind::Hyperbolic, WarpKind::Spherical, WarpKind::Cubic}) {
    if (warp_name(k) == name) return k;
  }
  return std::nullopt;
}

ModelManifold::ModelManifold(int n, Warp warp, double R) : n_(n), warp_(warp), R_(R) {
  require(n >= 2, ErrorKind::InvalidArgument, "manifold dimension must be >= 2");
  require(std::isfinite(R) && R > 0.0, ErrorKind::InvalidArgument, "ball radius must be positive");
  const double outer = 2.0 * R;
  switch (warp.kind) {
    case WarpKind::Euclidean: break;
    case WarpKind::Hyperbolic:
      require(std::isfinite(warp.param) && warp.param > 0.0, ErrorKind::InvalidArgument,
              "hyperbolic curvature parameter k must be > 0");
      break;
    case WarpKind::Spherical:
      require(std::isfinite(warp.param) && warp.param > 0.0, ErrorKind::InvalidArgument,
              "spherical curvature parameter k must be > 0");
      require(outer * std::sqrt(warp.param) < M_PI, ErrorKind::Domain,
              "spherical warp is non-positive inside B_p(2R) (need 2R sqrt(k) < pi)");
      break;
    case WarpKind::Cubic:
      require(std::isfinite(warp.param), ErrorKind::InvalidArgument, "cubic warp coefficient must be finite");
      require(1.0 + warp.param * outer * outer > 0.0, ErrorKind::Domain,
              "cubic warp is non-positive inside B_p(2R) (need 1 + c (2R)^2 > 0)");
      break;
  }
}

void ModelManifold::check_domain(double r) const {
  const double outer = outer_radius();
  if (!(r >= 0.0 && r <= outer * (1.0 + 1e-12))) {
    fail(ErrorKind::Domain, "radius " + std::to_string(r) + " outside [0, 2R]");
  }
}

WarpValue ModelManifold::warp_at(double r) const {
  check_domain(r);
  const double k = warp_.param;
  switch (warp_.kind) {
    case WarpKind::Euclidean: return {r, 1.0, 0.0};
    case WarpKind::Hyperbolic: {
      const double s = std::sqrt(k);
      return {std::sinh(s * r) / s, std::cosh(s * r), s * std::sinh(s * r)};
    }
    case WarpKind::Spherical: {
      const double s = std::sqrt(k);
      return {std::sin(s * r) / s, std::cos(s * r), -s * std::sin(s * r)};
    }
    case WarpKind::Cubic: return {r + k * r * r * r, 1.0 + 3.0 * k * r * r, 6.0 * k * r};
  }
  return {r, 1.0, 0.0};
}

double ModelManifold::mean_curvature(double r) const {
  check_domain(r);
  require(r > 0.0, ErrorKind::Domain, "psi'/psi is singular at the pole");
  const double k = warp_.param;
  switch (warp_.kind) {
    case WarpKind::Euclidean: return 1.0 / r;
    case WarpKind::Hyperbolic: {
      const double s = std::sqrt(k);
      return s / std::tanh(s * r);
    }
    case WarpKind::Spherical: {
      const double s = std::sqrt(k);
      return s / std::tan(s * r);
    }
    case WarpKind::Cubic: return (1.0 + 3.0 * k * r * r) / (r + k * r * r * r);
  }
  return 1.0 / r;
}

double ModelManifold::warp_ratio(double r) const {
  check_domain(r);
  const double k = warp_.param;
  switch (warp_.kind) {
    case WarpKind::Euclidean: return 0.0;
    case WarpKind::Hyperbolic: return k;
    case WarpKind::Spherical: return -k;
    case WarpKind::Cubic: return 6.0 * k / (1.0 + k * r * r);
  }
  return 0.0;
}

double ModelManifold::sphere_defect(double r) const {
  check_domain(r);
  const double k = warp_.param;
  switch (warp_.kind) {
    case WarpKind::Euclidean: return 0.0;
    case WarpKind::Hyperbolic: return -k;
    case WarpKind::Spherical: return k;
    case WarpKind::Cubic: {
      const double q = 1.0 + k * r * r;
      return -(6.0 * k + 9.0 * k * k * r * r) / (q * q);
    }
  }
  return 0.0;
}

WarpValue warp_eval(const ModelManifold& manifold, double r) { return manifold.warp_at(r); }

double ricci_lower_bound(const ModelManifold& manifold) {
  const double outer = manifold.outer_radius();
  std::vector<double> lambda(kRicciSamples + 1);
  for (int i = 0; i <= kRicciSamples; ++i) {
    const double r = i == kRicciSamples ? outer : outer * i / kRicciSamples;
    const WarpValue w = manifold.warp_at(r);
    if (r > 0.0 && !(w.psi > 0.0)) fail(ErrorKind::Domain, "non-positive warp encountered");
    lambda[i] = std::min(manifold.radial_ricci(r), manifold.tangential_ricci(r));
  }
  double jump = 0.0;
  for (int i = 0; i < kRicciSamples; ++i) jump = std::max(jump, std::abs(lambda[i + 1] - lambda[i]));
  const double inf = *std::min_element(lambda.begin(), lambda.end());
  return std::max(0.0, -inf + jump);
}

RadialGrid::RadialGrid(double outer_radius, int intervals) : outer_(outer_radius), intervals_(intervals) {
  require(std::isfinite(outer_radius) && outer_radius > 0.0, ErrorKind::InvalidArgument,
          "grid outer radius must be positive");
  require(intervals >= 4, ErrorKind::InvalidArgument, "grid needs at least 4 intervals");
  h_ = outer_radius / intervals;
}

std::size_t RadialGrid::last_index_within(double radius) const {
  if (radius >= outer_) return size() - 1;
  if (radius < 0.0) fail(ErrorKind::Domain, "negative radius");
  return static_cast<std::size_t>(std::floor(radius / h_ + 1e-9));
}

ScalarField::ScalarField(RadialGrid grid, std::vector<double> values, std::optional<double> time)
    : grid_(grid), values_(std::move(values)), time_(time) {
  require(values_.size() == grid_.size(), ErrorKind::InvalidArgument, "field length does not match grid");
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorKind::Domain, "field contains non-finite values");
  }
}

ScalarField ScalarField::constant(const RadialGrid& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

std::vector<double> radial_derivative(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  require(n >= 3, ErrorKind::InvalidArgument, "radial_derivative needs at least 3 nodes");
  std::vector<double> d(n);
  d[0] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> radial_second_derivative(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  require(n >= 4, ErrorKind::InvalidArgument, "radial_second_derivative needs at least 4 nodes");
  const double h2 = h * h;
  std::vector<double> d(n);
  d[0] = 2.0 * (v[1] - v[0]) / h2;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
  d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
  return d;
}

void check_same_grid(const ScalarField& field, const ModelManifold& manifold) {
  const double outer = manifold.outer_radius();
  if (std::abs(field.grid().outer_radius() - outer) > 1e-12 * outer) {
    fail(ErrorKind::InvalidArgument, "field grid does not cover the manifold's ball B_p(2R)");
  }
}

double radial_laplacian(const ModelManifold& manifold, double r, double d1, double d2) {
  if (r == 0.0) return manifold.dimension() * d2;
  return d2 + (manifold.dimension() - 1) * manifold.mean_curvature(r) * d1;
}

double hessian_norm_sq(const ModelManifold& manifold, double r, double d1, double d2) {
  if (r == 0.0) return manifold.dimension() * d2 * d2;
  const double t = manifold.mean_curvature(r) * d1;
  return d2 * d2 + (manifold.dimension() - 1) * t * t;
}

ScalarField laplace_beltrami(const ScalarField& field, const ModelManifold& manifold) {
  check_same_grid(field, manifold);
  const RadialGrid& grid = field.grid();
  require(grid.intervals() >= 8, ErrorKind::InvalidArgument, "grid too coarse for the Laplacian (need >= 8 intervals)");
  const auto d1 = radial_derivative(field.values(), grid.spacing());
  const auto d2 = radial_second_derivative(field.values(), grid.spacing());
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = radial_laplacian(manifold, grid.node(i), d1[i], d2[i]);
  return ScalarField(grid, std::move(out), field.time());
}

ScalarField radial_gradient_sq(const ScalarField& field, const ModelManifold& manifold) {
  check_same_grid(field, manifold);
  auto d = radial_derivative(field.values(), field.grid().spacing());
  for (double& x : d) x *= x;
  return ScalarField(field.grid(), std::move(d), field.time());
}

}  // namespace gradlab
