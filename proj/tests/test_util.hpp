#pragma once

#include <random>

#include "mvl2e/numerics.hpp"

namespace mvl2e::testing {

inline Matrix random_matrix(Index rows, Index cols, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = dist(gen);
  return m;
}

inline Matrix random_symmetric(Index n, std::uint32_t seed) {
  Matrix m = random_matrix(n, n, seed);
  return 0.5 * (m + m.transpose());
}

// Random matrix with orthonormal rows (d x n, d <= n).
inline Matrix random_orthonormal_rows(Index d, Index n, std::uint32_t seed) {
  Matrix g = random_matrix(n, d, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, d);
  return q.transpose();
}

}  // namespace mvl2e::testing
