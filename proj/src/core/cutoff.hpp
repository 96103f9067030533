#pragma once

#include "core/geometry.hpp"

namespace gradlab {

/// phi = 1 on [0, R], cos^2(pi (r/R - 1)/2) on [R, 2R]. Certified constants C1 = pi, C2 = pi^2/2.
class CutoffProfile {
 public:
  explicit CutoffProfile(double R);

  double radius() const noexcept { return R_; }
  double C1() const noexcept;
  double C2() const noexcept;

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;

 private:
  double R_;
};

CutoffProfile build_cutoff(double R);

/// min over nodes with phi > 0 of C1^2/R^2 - phi'^2/phi.
double verify_cutoff_gradient(const CutoffProfile& profile, const ModelManifold& manifold, int intervals = 4096);

/// min over nodes of Delta phi + B, Delta phi from the exact Delta r of the manifold.
double verify_cutoff_laplacian(const CutoffProfile& profile, const ModelManifold& manifold, double K,
                               int intervals = 4096);

double B_constant(int n, double K, double R, double C1, double C2);

}  // namespace gradlab
