#include "catcert/exact_lp.hpp"

#include <stdexcept>
#include <vector>

namespace catcert {

std::optional<RVector> lp_feasible_point(const RMatrix& A, const RVector& b) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m) throw std::invalid_argument("lp_feasible_point: shape mismatch");

  // Tableau [A | I | b] with artificial basis; minimize the artificial sum.
  const Eigen::Index cols = n + m + 1;
  RMatrix t = RMatrix::Zero(m, cols);
  for (Eigen::Index i = 0; i < m; ++i) {
    Rational sign = b(i) < 0 ? Rational(-1) : Rational(1);
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = sign * A(i, j);
    t(i, n + i) = 1;
    t(i, cols - 1) = sign * b(i);
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  auto is_artificial = [&](Eigen::Index j) { return j >= n; };

  for (long iter = 0;; ++iter) {
    if (iter > 200'000) throw std::runtime_error("lp_feasible_point: iteration cap hit");

    // Reduced cost r_j = c_j - sum_i c_{basis_i} t(i, j); c is the
    // artificial indicator. Bland: smallest j with r_j < 0 enters.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m && enter < 0; ++j) {
      Rational cj = is_artificial(j) ? Rational(1) : Rational(0);
      Rational z = 0;
      for (Eigen::Index i = 0; i < m; ++i)
        if (is_artificial(basis[static_cast<std::size_t>(i)])) z += t(i, j);
      if (cj - z < 0) enter = j;
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    Rational best_ratio = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, cols - 1) / t(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("lp_feasible_point: phase-1 unbounded");

    Rational pivot = t(leave, enter);
    for (Eigen::Index j = 0; j < cols; ++j) t(leave, j) /= pivot;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      Rational factor = t(i, enter);
      for (Eigen::Index j = 0; j < cols; ++j) t(i, j) -= factor * t(leave, j);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  Rational objective = 0;
  for (Eigen::Index i = 0; i < m; ++i)
    if (is_artificial(basis[static_cast<std::size_t>(i)])) objective += t(i, cols - 1);
  if (objective != 0) return std::nullopt;

  RVector x = RVector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] < n) x(basis[static_cast<std::size_t>(i)]) = t(i, cols - 1);
  return x;
}

}  // namespace catcert
