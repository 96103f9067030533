#include "core/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace gradlab {

CutoffProfile::CutoffProfile(double R) : R_(R) {
  require(std::isfinite(R) && R > 0.0, ErrorKind::InvalidArgument, "cutoff radius must be positive");
}

double CutoffProfile::C1() const noexcept { return M_PI; }
double CutoffProfile::C2() const noexcept { return M_PI * M_PI / 2.0; }

double CutoffProfile::value(double r) const {
  if (r <= R_) return 1.0;
  if (r >= 2.0 * R_) return 0.0;
  const double c = std::cos(M_PI * (r / R_ - 1.0) / 2.0);
  return c * c;
}

double CutoffProfile::d1(double r) const {
  if (r <= R_ || r >= 2.0 * R_) return 0.0;
  return -(M_PI / (2.0 * R_)) * std::sin(M_PI * (r / R_ - 1.0));
}

// one-sided limits at R and 2R differ (C^1 only); the value from inside (R, 2R) is returned there
double CutoffProfile::d2(double r) const {
  if (r < R_ || r > 2.0 * R_) return 0.0;
  return -(M_PI * M_PI / (2.0 * R_ * R_)) * std::cos(M_PI * (r / R_ - 1.0));
}

CutoffProfile build_cutoff(double R) { return CutoffProfile(R); }

double verify_cutoff_gradient(const CutoffProfile& profile, const ModelManifold& manifold, int intervals) {
  require(intervals >= 8, ErrorKind::InvalidArgument, "cutoff check needs >= 8 intervals");
  const double R = profile.radius();
  const double bound = profile.C1() * profile.C1() / (R * R);
  const double outer = manifold.outer_radius();
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= intervals; ++i) {
    const double r = outer * i / intervals;
    const double phi = profile.value(r);
    if (!(phi > 0.0)) continue;
    const double d = profile.d1(r);
    margin = std::min(margin, bound - d * d / phi);
  }
  return margin;
}

double verify_cutoff_laplacian(const CutoffProfile& profile, const ModelManifold& manifold, double K, int intervals) {
  require(intervals >= 8, ErrorKind::InvalidArgument, "cutoff check needs >= 8 intervals");
  require(K >= 0.0, ErrorKind::InvalidArgument, "K must be >= 0");
  const double B = B_constant(manifold.dimension(), K, profile.radius(), profile.C1(), profile.C2());
  const double outer = manifold.outer_radius();
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= intervals; ++i) {
    const double r = i == intervals ? outer : outer * i / intervals;
    const double lap = radial_laplacian(manifold, r, profile.d1(r), profile.d2(r));
    margin = std::min(margin, lap + B);
  }
  return margin;
}

double B_constant(int n, double K, double R, double C1, double C2) {
  require(n >= 2 && K >= 0.0 && R > 0.0, ErrorKind::InvalidArgument, "B needs n >= 2, K >= 0, R > 0");
  return ((n - 1) * (1.0 + std::sqrt(K) * R) * C1 * C1 + C2) / (R * R);
}

}  // namespace gradlab
