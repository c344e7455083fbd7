#include "mvl2e/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace mvl2e {

namespace {

Matrix embedding_operand(const WeightMatrix& w) {
  Matrix iw = Matrix::Identity(w.n, w.n) - w.dense();
  return iw.transpose() * iw;
}

}  // namespace

Embedding embed_from_weights(const WeightMatrix& w, Index d) {
  if (d < 1 || d > w.n - 1) {
    throw ContractViolation("embed_from_weights: d must be in [1, N-1], got d=" +
                            std::to_string(d) + " with N=" + std::to_string(w.n));
  }
  EigResult eig = sym_eig(embedding_operand(w), {d, EigWhich::Smallest, /*skip_null=*/true});
  return {eig.eigenvectors.transpose()};
}

double reconstruction_cost(const Embedding& y, const WeightMatrix& w) {
  if (y.n() != w.n) {
    throw InconsistentInput("reconstruction_cost: embedding has " + std::to_string(y.n()) +
                            " samples, weights have " + std::to_string(w.n));
  }
  // Phi(Y) = ||Y - Y W^T||_F^2
  Matrix diff = y.coords - y.coords * w.w.transpose();
  return diff.squaredNorm();
}

Embedding l2e_embed(const Matrix& x, Index k, double reg, double mu, Index d) {
  NeighborDictionary nd = knn_dictionary(x, k);
  LocalCodes codes = low_rank_refine(local_codes(x, nd, reg), mu);
  return embed_from_weights(assemble_weight_matrix(codes, nd), d);
}

Embedding lle_embed(const Matrix& x, Index k, double reg, Index d) {
  return l2e_embed(x, k, reg, 0.0, d);
}

Embedding spectral_embed(const Matrix& s, Index d) {
  const Index n = s.rows();
  if (s.cols() != n) {
    throw ContractViolation("spectral_embed: similarity must be square");
  }
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ContractViolation("spectral_embed: similarity must be symmetric");
  }
  if (s.minCoeff() < 0.0) {
    throw ContractViolation("spectral_embed: similarity must be nonnegative");
  }
  Vector row_sums = s.rowwise().sum();
  for (Index i = 0; i < n; ++i) {
    if (row_sums[i] <= 0.0) {
      throw DegenerateGeometry("spectral_embed: zero row sum at sample " + std::to_string(i));
    }
  }
  Vector inv_sqrt = row_sums.array().rsqrt();
  Matrix l = inv_sqrt.asDiagonal() * s * inv_sqrt.asDiagonal();
  EigResult eig = sym_eig(l, {d, EigWhich::Largest, /*skip_null=*/false});
  return {eig.eigenvectors.transpose()};
}

Matrix gaussian_similarity(const Matrix& x) {
  const Index n = x.cols();
  Matrix d2(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      d2(i, j) = (x.col(i) - x.col(j)).squaredNorm();
    }
  }
  std::vector<double> dists;
  dists.reserve(static_cast<size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      dists.push_back(std::sqrt(d2(i, j)));
    }
  }
  double sigma = 1.0;
  if (!dists.empty()) {
    auto mid = dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2);
    std::nth_element(dists.begin(), mid, dists.end());
    sigma = *mid;
  }
  if (sigma <= 0.0) sigma = 1.0;  // all points coincide

  Matrix s = (-d2 / (2.0 * sigma * sigma)).array().exp();
  // symmetrize exactly; exp of identical arguments is already symmetric, but
  // keep the diagonal exactly one
  s.diagonal().setOnes();
  return s;
}

}  // namespace mvl2e
