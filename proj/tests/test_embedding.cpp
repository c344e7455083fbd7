#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "mvl2e/embedding.hpp"
#include "test_util.hpp"

using namespace mvl2e;
using mvl2e::testing::random_matrix;
using mvl2e::testing::random_orthonormal_rows;

namespace {

WeightMatrix random_weights(Index n, Index k, std::uint32_t seed) {
  Matrix x = random_matrix(4, n, seed);
  NeighborDictionary nd = knn_dictionary(x, k);
  return assemble_weight_matrix(local_codes(x, nd, 1e-3), nd);
}

}  // namespace

TEST_CASE("embed_from_weights output is orthogonal to the constant direction") {
  WeightMatrix w = random_weights(12, 3, 5);
  Embedding y = embed_from_weights(w, 2);
  Vector ones = Vector::Constant(12, 1.0 / std::sqrt(12.0));
  // M 1 = 0 because rows sum to one
  Matrix iw = Matrix::Identity(12, 12) - w.dense();
  CHECK((iw.transpose() * iw * ones).norm() < 1e-8);
  CHECK((y.coords * ones).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((y.coords * y.coords.transpose() - Matrix::Identity(2, 2)).norm() <= 1e-8);
}

TEST_CASE("embed_from_weights matches a dense full eigendecomposition oracle") {
  WeightMatrix w = random_weights(5, 2, 11);
  Embedding y = embed_from_weights(w, 2);

  Matrix iw = Matrix::Identity(5, 5) - w.dense();
  Matrix m = iw.transpose() * iw;
  Eigen::SelfAdjointEigenSolver<Matrix> full(m);
  const double null_tol = 1e-9 * std::max(1.0, full.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Index> keep;
  for (Index i = 0; i < 5 && keep.size() < 2; ++i) {
    if (std::abs(full.eigenvalues()[i]) > null_tol) keep.push_back(i);
  }
  REQUIRE(keep.size() == 2);
  for (size_t r = 0; r < 2; ++r) {
    Vector expect = full.eigenvectors().col(keep[r]);
    Vector got = y.coords.row(static_cast<Index>(r)).transpose();
    const double err = std::min((got - expect).norm(), (got + expect).norm());
    CHECK(err < 1e-8);
  }
}

TEST_CASE("embed_from_weights achieves the Ky-Fan value") {
  WeightMatrix w = random_weights(15, 4, 23);
  Embedding y = embed_from_weights(w, 3);
  Matrix iw = Matrix::Identity(15, 15) - w.dense();
  EigResult eig = sym_eig(Matrix(iw.transpose() * iw), {3, EigWhich::Smallest, true});
  CHECK(std::abs(reconstruction_cost(y, w) - eig.eigenvalues.sum()) < 1e-8);
}

TEST_CASE("reconstruction_cost basics") {
  WeightMatrix w = random_weights(10, 3, 31);

  // constant embedding reconstructs exactly under unit row sums
  Embedding constant{Matrix::Ones(2, 10)};
  CHECK(reconstruction_cost(constant, w) < 1e-12);

  // matches the trace form by dense algebra
  Embedding y{random_matrix(3, 10, 32)};
  Matrix iw = Matrix::Identity(10, 10) - w.dense();
  const double trace_form = (y.coords * iw.transpose() * iw * y.coords.transpose()).trace();
  CHECK(std::abs(reconstruction_cost(y, w) - trace_form) < 1e-10);

  Embedding wrong{Matrix::Ones(2, 9)};
  CHECK_THROWS_AS(reconstruction_cost(wrong, w), InconsistentInput);
}

TEST_CASE("reconstruction cost is rotation invariant") {
  WeightMatrix w = random_weights(10, 3, 41);
  Embedding y{random_orthonormal_rows(3, 10, 42)};
  Matrix rot = random_orthonormal_rows(3, 3, 43);
  Embedding rotated{rot * y.coords};
  CHECK(std::abs(reconstruction_cost(y, w) - reconstruction_cost(rotated, w)) < 1e-10);
}

TEST_CASE("embed_from_weights beats random orthonormal candidates") {
  WeightMatrix w = random_weights(12, 3, 51);
  Embedding best = embed_from_weights(w, 2);
  const double best_cost = reconstruction_cost(best, w);
  for (std::uint32_t s = 0; s < 200; ++s) {
    Embedding cand{random_orthonormal_rows(2, 12, 1000 + s)};
    CHECK(reconstruction_cost(cand, w) >= best_cost - 1e-10);
  }
}

TEST_CASE("l2e_embed equals its step-by-step composition") {
  Matrix x = random_matrix(6, 30, 61);
  Embedding direct = l2e_embed(x, 5, 1e-3, 0.05, 2);

  NeighborDictionary nd = knn_dictionary(x, 5);
  LocalCodes codes = low_rank_refine(local_codes(x, nd, 1e-3), 0.05);
  Embedding manual = embed_from_weights(assemble_weight_matrix(codes, nd), 2);
  CHECK(direct.coords == manual.coords);
  CHECK((direct.coords * direct.coords.transpose() - Matrix::Identity(2, 2)).norm() <= 1e-8);
}

TEST_CASE("lle_embed is l2e_embed with mu = 0") {
  Matrix x = random_matrix(4, 20, 71);
  Embedding lle = lle_embed(x, 4, 1e-3, 2);
  Embedding l2e = l2e_embed(x, 4, 1e-3, 0.0, 2);
  CHECK(lle.coords == l2e.coords);
}

TEST_CASE("single-view concatenation is that view") {
  Matrix x = random_matrix(4, 20, 81);
  // concatenating one view is the identity on the feature rows
  Embedding direct = lle_embed(x, 4, 1e-3, 2);
  Matrix cat = x;
  Embedding via_cat = lle_embed(cat, 4, 1e-3, 2);
  CHECK(direct.coords == via_cat.coords);
}

TEST_CASE("spectral_embed separates a two-block graph") {
  Matrix s = Matrix::Zero(6, 6);
  s.topLeftCorner(3, 3).setOnes();
  s.bottomRightCorner(3, 3).setOnes();
  Embedding y = spectral_embed(s, 2);
  // returned directions are constant within blocks
  for (Index r = 0; r < 2; ++r) {
    CHECK(std::abs(y.coords(r, 0) - y.coords(r, 1)) < 1e-8);
    CHECK(std::abs(y.coords(r, 0) - y.coords(r, 2)) < 1e-8);
    CHECK(std::abs(y.coords(r, 3) - y.coords(r, 4)) < 1e-8);
    CHECK(std::abs(y.coords(r, 3) - y.coords(r, 5)) < 1e-8);
  }
  // the two blocks are distinguished by at least one direction
  const double sep = std::abs(y.coords(0, 0) - y.coords(0, 3)) +
                     std::abs(y.coords(1, 0) - y.coords(1, 3));
  CHECK(sep > 0.1);
  CHECK((y.coords * y.coords.transpose() - Matrix::Identity(2, 2)).norm() <= 1e-8);
}

TEST_CASE("spectral_embed achieves the Ky-Fan value") {
  Matrix x = random_matrix(4, 12, 91);
  Matrix s = gaussian_similarity(x);
  Embedding y = spectral_embed(s, 3);
  Vector inv_sqrt = s.rowwise().sum().array().rsqrt();
  Matrix l = inv_sqrt.asDiagonal() * s * inv_sqrt.asDiagonal();
  EigResult eig = sym_eig(l, {3, EigWhich::Largest});
  const double achieved = (y.coords * l * y.coords.transpose()).trace();
  CHECK(std::abs(achieved - eig.eigenvalues.sum()) < 1e-8);
}

TEST_CASE("spectral_embed input validation") {
  Matrix asym = random_matrix(4, 4, 3);
  CHECK_THROWS_AS(spectral_embed(asym, 1), ContractViolation);
  Matrix zero_row = Matrix::Zero(3, 3);
  zero_row(0, 1) = zero_row(1, 0) = 1.0;
  CHECK_THROWS_AS(spectral_embed(zero_row, 1), DegenerateGeometry);
}

TEST_CASE("gaussian_similarity has unit diagonal and values in (0,1]") {
  Matrix x = random_matrix(3, 10, 101);
  Matrix s = gaussian_similarity(x);
  CHECK((s.diagonal().array() == 1.0).all());
  CHECK(s.minCoeff() > 0.0);
  CHECK(s.maxCoeff() <= 1.0);
  CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}
