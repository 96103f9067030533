#include "core/tridiagonal.hpp"

#include <cmath>
#include <utility>

#include "core/error.hpp"

namespace gradlab {

std::vector<double> Tridiagonal::apply(const std::vector<double>& x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += sub[i - 1] * x[i - 1];
    if (i + 1 < n) s += sup[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::vector<double> solve_tridiagonal(Tridiagonal m, std::vector<double> b) {
  const std::size_t n = m.size();
  require(b.size() == n && n > 0, ErrorKind::InvalidArgument, "tridiagonal system size mismatch");
  auto& dl = m.sub;
  auto& d = m.diag;
  auto& du = m.sup;
  // second superdiagonal fill-in created by row swaps
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) throw SolverError("singular Jacobian (zero pivot at row " + std::to_string(i) + ")");
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      b[i + 1] -= f * b[i];
      dl[i] = 0.0;
    } else {
      // swap rows i and i+1
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      du[i] = tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= f * b[i];
    }
  }
  if (d[n - 1] == 0.0) throw SolverError("singular Jacobian (zero pivot at row " + std::to_string(n - 1) + ")");

  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    if (k + 1 < n) s -= du[k] * x[k + 1];
    if (k + 2 < n) s -= du2[k] * x[k + 2];
    x[k] = s / d[k];
  }
  return x;
}

}  // namespace gradlab
