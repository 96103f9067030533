#pragma once

#include <vector>

namespace gradlab {

/// Tridiagonal system: sub[i] couples row i+1 to column i, sup[i] couples row i to column i+1.
struct Tridiagonal {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> sup;

  explicit Tridiagonal(std::size_t n) : sub(n > 0 ? n - 1 : 0), diag(n), sup(n > 0 ? n - 1 : 0) {}
  std::size_t size() const { return diag.size(); }

  std::vector<double> apply(const std::vector<double>& x) const;
};

/// Gaussian elimination with partial pivoting (the LAPACK dgtsv scheme). Throws SolverError when a
/// pivot vanishes. Arguments are taken by value; the matrix is consumed.
std::vector<double> solve_tridiagonal(Tridiagonal m, std::vector<double> rhs);

}  // namespace gradlab
