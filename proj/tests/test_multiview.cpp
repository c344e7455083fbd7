#include <doctest.h>

#include "mvl2e/multiview.hpp"
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

MultiViewDataset synth_two_views(Index n, std::uint64_t seed, double sigma = 0.05) {
  SynthSpec spec;
  spec.n = n;
  spec.latent_dim = 4;
  spec.view_dims = {12, 12};
  spec.noise_sigmas = {sigma, sigma};
  spec.seed = seed;
  return synth_multiview(spec);
}

}  // namespace

TEST_CASE("agreement identities") {
  Embedding y{random_orthonormal_rows(3, 10, 1)};
  CHECK(agreement(y, y) == doctest::Approx(3.0).epsilon(1e-10));

  // orthogonal row spaces: zero agreement
  Matrix q = random_orthonormal_rows(6, 10, 2);
  Embedding a{q.topRows(3)};
  Embedding b{q.bottomRows(3)};
  CHECK(std::abs(agreement(a, b)) < 1e-10);

  Embedding wrong{random_orthonormal_rows(2, 9, 3)};
  CHECK_THROWS_AS(agreement(y, wrong), InconsistentInput);
}

TEST_CASE("agreement is exactly symmetric") {
  Embedding a{random_matrix(3, 8, 4)};
  Embedding b{random_matrix(5, 8, 5)};
  CHECK(agreement(a, b) == agreement(b, a));
}

TEST_CASE("agreement matches the Frobenius expansion") {
  Embedding a{random_matrix(3, 8, 6)};
  Embedding b{random_matrix(4, 8, 7)};
  Matrix ka = a.coords.transpose() * a.coords;
  Matrix kb = b.coords.transpose() * b.coords;
  const double expansion =
      0.5 * (ka.squaredNorm() + kb.squaredNorm() - (ka - kb).squaredNorm());
  CHECK(std::abs(agreement(a, b) - expansion) < 1e-10);
}

TEST_CASE("agreement bounded by min dimension for orthonormal rows") {
  Embedding a{random_orthonormal_rows(2, 12, 8)};
  Embedding b{random_orthonormal_rows(5, 12, 9)};
  const double s = agreement(a, b);
  CHECK(s >= -1e-12);
  CHECK(s <= 2.0 + 1e-12);
}

TEST_CASE("mv_objective single-term reduction and gamma linearity") {
  WeightMatrix w = random_weights(12, 3, 10);
  Embedding y = embed_from_weights(w, 2);

  MvState state;
  state.gamma = 0.0;
  state.centroid = y;
  state.views = {y};
  state.weights = {w};

  Matrix iw = Matrix::Identity(12, 12) - w.dense();
  EigResult eig = sym_eig(Matrix(iw.transpose() * iw), {2, EigWhich::Smallest, true});
  CHECK(std::abs(mv_objective(state) + eig.eigenvalues.sum()) < 1e-8);

  // doubling gamma adds gamma * sum_v agreement
  state.gamma = 0.8;
  const double f1 = mv_objective(state);
  state.gamma = 1.6;
  const double f2 = mv_objective(state);
  CHECK(std::abs((f2 - f1) - 0.8 * agreement(y, y)) < 1e-10);
}

TEST_CASE("mv_objective second term equals reconstruction_cost") {
  WeightMatrix w = random_weights(10, 3, 11);
  Embedding y{random_orthonormal_rows(2, 10, 12)};
  MvState state;
  state.gamma = 0.7;
  state.centroid = Embedding{random_orthonormal_rows(2, 10, 13)};
  state.views = {y};
  state.weights = {w};
  const double expect = 0.7 * agreement(state.centroid, y) - reconstruction_cost(y, w);
  CHECK(std::abs(mv_objective(state) - expect) < 1e-10);
}

TEST_CASE("mv_objective is rotation invariant") {
  WeightMatrix w = random_weights(10, 3, 14);
  MvState state;
  state.gamma = 0.8;
  state.centroid = Embedding{random_orthonormal_rows(2, 10, 15)};
  state.views = {Embedding{random_orthonormal_rows(2, 10, 16)}};
  state.weights = {w};
  const double before = mv_objective(state);
  Matrix rot = random_orthonormal_rows(2, 2, 17);
  state.views[0].coords = rot * state.views[0].coords;
  CHECK(std::abs(mv_objective(state) - before) < 1e-10);
}

TEST_CASE("update_centroid single view recovers its row space") {
  Embedding y{random_orthonormal_rows(3, 10, 18)};
  Embedding c = update_centroid({y}, 0.8, 3);
  CHECK(agreement(c, y) == doctest::Approx(3.0).epsilon(1e-8));
  // two identical views: same subspace, objective 2 gamma d
  Embedding c2 = update_centroid({y, y}, 0.8, 3);
  CHECK(0.8 * (agreement(c2, y) + agreement(c2, y)) == doctest::Approx(2 * 0.8 * 3).epsilon(1e-8));
  CHECK_THROWS_AS(update_centroid({y}, 0.0, 2), ContractViolation);
}

TEST_CASE("update_centroid beats random candidates and attains the Ky-Fan value") {
  std::vector<Embedding> views;
  for (std::uint32_t s = 0; s < 3; ++s) {
    views.push_back({random_orthonormal_rows(3, 12, 20 + s)});
  }
  const double gamma = 0.8;
  Embedding c = update_centroid(views, gamma, 3);

  Matrix l_star = Matrix::Zero(12, 12);
  for (const Embedding& y : views) l_star += gamma * y.coords.transpose() * y.coords;
  EigResult eig = sym_eig(l_star, {3, EigWhich::Largest});
  double achieved = 0.0;
  for (const Embedding& y : views) achieved += gamma * agreement(c, y);
  CHECK(std::abs(achieved - eig.eigenvalues.sum()) < 1e-8);

  for (std::uint32_t s = 0; s < 500; ++s) {
    Embedding cand{random_orthonormal_rows(3, 12, 5000 + s)};
    double cand_val = 0.0;
    for (const Embedding& y : views) cand_val += gamma * agreement(cand, y);
    CHECK(cand_val <= achieved + 1e-10);
  }
}

TEST_CASE("update_view with gamma=0 maximizes -reconstruction cost") {
  WeightMatrix w = random_weights(12, 3, 30);
  Embedding centroid{random_orthonormal_rows(2, 12, 31)};
  Embedding y = update_view(centroid, w, 0.0, 2);

  // top eigvecs of -M = smallest of M including the null direction, so the
  // returned space contains the constant vector
  Vector ones = Vector::Constant(12, 1.0 / std::sqrt(12.0));
  Vector proj = y.coords * ones;
  CHECK(proj.norm() == doctest::Approx(1.0).epsilon(1e-8));

  Matrix iw = Matrix::Identity(12, 12) - w.dense();
  EigResult eig = sym_eig(Matrix(iw.transpose() * iw), {2, EigWhich::Smallest, false});
  CHECK(std::abs(reconstruction_cost(y, w) - eig.eigenvalues.sum()) < 1e-8);
}

TEST_CASE("update_view Ky-Fan value matches dense oracle") {
  WeightMatrix w = random_weights(12, 3, 32);
  Embedding centroid{random_orthonormal_rows(3, 12, 33)};
  const double gamma = 0.8;
  Embedding y = update_view(centroid, w, gamma, 3);

  Matrix iw = Matrix::Identity(12, 12) - w.dense();
  Matrix op = gamma * centroid.coords.transpose() * centroid.coords - iw.transpose() * iw;
  op = 0.5 * (op + op.transpose());
  EigResult eig = sym_eig(op, {3, EigWhich::Largest});
  const double achieved = (y.coords * op * y.coords.transpose()).trace();
  CHECK(std::abs(achieved - eig.eigenvalues.sum()) < 1e-8);

  for (std::uint32_t s = 0; s < 500; ++s) {
    Embedding cand{random_orthonormal_rows(3, 12, 9000 + s)};
    const double cand_val = (cand.coords * op * cand.coords.transpose()).trace();
    CHECK(cand_val <= achieved + 1e-10);
  }
}

TEST_CASE("mvl2e_fit: loop contract and duplicated-view symmetry") {
  MultiViewDataset ds = synth_two_views(60, 7);
  ds.views[1] = ds.views[0];  // duplicate view
  ds.views[1].first = "copy";

  PipelineConfig cfg;
  cfg.k = 6;
  cfg.d_views = {4};
  cfg.gamma = 0.8;
  auto [state, trace] = mvl2e_fit(ds, cfg);

  CHECK(trace.iterations <= cfg.max_iters);
  CHECK(static_cast<Index>(trace.objective_values.size()) == trace.iterations);
  CHECK(trace.converged == (trace.rel_change_at_stop < cfg.tol));
  CHECK(std::abs(agreement(state.centroid, state.views[0]) -
                 agreement(state.centroid, state.views[1])) < 1e-6);

  for (size_t t = 1; t < trace.objective_values.size(); ++t) {
    CHECK(trace.objective_values[t] >= trace.objective_values[t - 1] - 1e-6);
  }
  // orthonormality preserved
  CHECK((state.centroid.coords * state.centroid.coords.transpose() -
         Matrix::Identity(4, 4)).norm() <= 1e-8);
  for (const Embedding& y : state.views) {
    CHECK((y.coords * y.coords.transpose() - Matrix::Identity(4, 4)).norm() <= 1e-8);
  }
}

TEST_CASE("mvl2e_fit converges on the synthetic 2-view benchmark") {
  SynthSpec spec;
  spec.n = 200;
  spec.latent_dim = 4;
  spec.view_dims = {16, 16};
  spec.noise_sigmas = {0.05, 0.05};
  spec.seed = 20240817;
  MultiViewDataset ds = synth_multiview(spec);
  PipelineConfig cfg;
  cfg.k = 10;
  cfg.d_views = {10};
  cfg.d_star = 10;
  cfg.gamma = 0.8;
  auto [state, trace] = mvl2e_fit(ds, cfg);
  CHECK(trace.converged);
  CHECK(trace.iterations <= 100);
}

TEST_CASE("coregularized_fit: lambda=0 decouples into spectral embeddings") {
  std::vector<Matrix> sims;
  for (std::uint32_t s = 0; s < 2; ++s) {
    sims.push_back(gaussian_similarity(random_matrix(4, 15, 40 + s)));
  }
  std::vector<Embedding> us = coregularized_fit(sims, 0.0, 3, 20);
  for (size_t v = 0; v < 2; ++v) {
    Embedding direct = spectral_embed(sims[v], 3);
    for (Index r = 0; r < 3; ++r) {
      const double err = std::min((us[v].coords.row(r) - direct.coords.row(r)).norm(),
                                  (us[v].coords.row(r) + direct.coords.row(r)).norm());
      CHECK(err < 1e-8);
    }
  }
}

TEST_CASE("coregularized_fit objective is non-decreasing") {
  std::vector<Matrix> sims;
  for (std::uint32_t s = 0; s < 3; ++s) {
    sims.push_back(gaussian_similarity(random_matrix(4, 15, 50 + s)));
  }
  const double lambda = 0.4;
  const Index d = 3;

  // re-evaluate the objective after each number of allowed iterations
  auto objective = [&](const std::vector<Embedding>& us) {
    double total = 0.0;
    for (size_t v = 0; v < sims.size(); ++v) {
      Vector inv_sqrt = sims[v].rowwise().sum().array().rsqrt();
      Matrix l = inv_sqrt.asDiagonal() * sims[v] * inv_sqrt.asDiagonal();
      total += (us[v].coords * l * us[v].coords.transpose()).trace();
    }
    for (size_t v = 0; v < sims.size(); ++v) {
      for (size_t w = v + 1; w < sims.size(); ++w) {
        total += lambda * agreement(us[v], us[w]);
      }
    }
    return total;
  };

  double prev = -1e300;
  for (Index iters = 1; iters <= 6; ++iters) {
    const double val = objective(coregularized_fit(sims, lambda, d, iters));
    CHECK(val >= prev - 1e-6);
    prev = val;
  }
}

TEST_CASE("coregularized_fit with identical views reaches full agreement") {
  Matrix s = gaussian_similarity(random_matrix(4, 15, 60));
  std::vector<Embedding> us = coregularized_fit({s, s}, 0.5, 3, 50);
  CHECK(agreement(us[0], us[1]) == doctest::Approx(3.0).epsilon(1e-6));
}
