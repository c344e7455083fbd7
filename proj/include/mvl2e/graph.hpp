#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "mvl2e/numerics.hpp"

namespace mvl2e {

// K nearest neighbors of each sample within one view, nearest first.
// A sample never lists itself.
struct NeighborDictionary {
  Index n_samples = 0;
  Index k = 0;
  std::vector<std::vector<Index>> neighbor_indices;
};

// Column i holds sample i's reconstruction coefficients over its K neighbors;
// every column sums to one.
struct LocalCodes {
  Matrix codes;           // K x N
  Vector residual_norms;  // N, ||x_i - D_i z_i||_2

  Index k() const { return codes.rows(); }
  Index n() const { return codes.cols(); }
};

// Sparse N x N reconstruction weights: row i holds sample i's coefficients at
// its neighbor columns; rows sum to one.
struct WeightMatrix {
  Index n = 0;
  Eigen::SparseMatrix<double, Eigen::RowMajor> w;

  Matrix dense() const { return Matrix(w); }
};

// Brute-force Euclidean k nearest neighbors, ties broken by smaller index.
// X is D x N, samples as columns.
NeighborDictionary knn_dictionary(const Matrix& x, Index k);

// Stage 1 of the local coding problem: per sample, minimize
// ||x_i - D_i z||^2 subject to z^T 1 = 1, via the regularized local Gram
// system (G + reg tr(G)/K I) w = 1, z = w / sum(w).
LocalCodes local_codes(const Matrix& x, const NeighborDictionary& nd, double reg);

// Stage 2: soft-threshold the code matrix's singular values at
// mu * sigma_max, then renormalize each column to sum to one. Columns whose
// post-threshold sum is below 1e-8 in magnitude keep their input values.
// Residual norms are carried through unchanged.
LocalCodes low_rank_refine(const LocalCodes& codes, double mu);

// Scatters codes into the N x N weight matrix at neighbor positions.
WeightMatrix assemble_weight_matrix(const LocalCodes& codes, const NeighborDictionary& nd);

}  // namespace mvl2e
