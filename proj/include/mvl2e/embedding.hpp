#pragma once

#include "mvl2e/graph.hpp"

namespace mvl2e {

// d x N coordinates with orthonormal rows (Y Y^T = I_d).
struct Embedding {
  Matrix coords;

  Index d() const { return coords.rows(); }
  Index n() const { return coords.cols(); }
};

// Minimizes tr(Y (I-W)^T (I-W) Y^T) over orthonormal-row Y: rows are the
// eigenvectors of (I-W)^T(I-W) with the d smallest non-null eigenvalues.
Embedding embed_from_weights(const WeightMatrix& w, Index d);

// Phi(Y) = sum_i ||y_i - sum_j W_ij y_j||^2.
double reconstruction_cost(const Embedding& y, const WeightMatrix& w);

// Full single-view pipeline: knn -> local codes -> SVT refine -> weights ->
// spectral solve.
Embedding l2e_embed(const Matrix& x, Index k, double reg, double mu, Index d);

// Classical LLE: the same pipeline with the SVT stage disabled.
Embedding lle_embed(const Matrix& x, Index k, double reg, Index d);

// Top-d eigenvectors of the symmetrically normalized similarity
// D^{-1/2} S D^{-1/2}. S must be symmetric, nonnegative, with positive row sums.
Embedding spectral_embed(const Matrix& s, Index d);

// Gaussian similarity exp(-||xi-xj||^2 / (2 sigma^2)) with sigma the median
// pairwise distance; ones on the diagonal.
Matrix gaussian_similarity(const Matrix& x);

}  // namespace mvl2e
