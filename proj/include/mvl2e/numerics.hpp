#pragma once

#include <Eigen/Dense>

#include "mvl2e/errors.hpp"

namespace mvl2e {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class EigWhich { Smallest, Largest };

// Which part of the spectrum to return. With skip_null set, eigenpairs whose
// eigenvalue magnitude falls below a scale-relative null tolerance are passed
// over before counting.
struct EigenSelection {
  Index count = 1;
  EigWhich which = EigWhich::Largest;
  bool skip_null = false;
};

struct EigResult {
  Vector eigenvalues;   // sorted per EigenSelection::which
  Matrix eigenvectors;  // orthonormal columns, one per eigenvalue
};

struct SvdResult {
  Matrix u;                // orthonormal columns
  Vector singular_values;  // descending, nonnegative
  Matrix v;                // orthonormal columns
};

// |lambda| <= null_tolerance(spectrum) marks a null direction.
double null_tolerance(const Vector& eigenvalues);

// Symmetric eigendecomposition with a deterministic sign convention: each
// eigenvector's largest-magnitude entry is positive. Input must be square and
// symmetric to within 1e-10 relative asymmetry.
EigResult sym_eig(const Matrix& a, const EigenSelection& sel);

// Thin SVD, singular values descending.
SvdResult svd(const Matrix& m);

// Singular value thresholding: U diag(max(sigma_i - tau, 0)) V^T.
Matrix svt(const Matrix& m, double tau);

}  // namespace mvl2e
