#pragma once

#include <utility>
#include <vector>

#include "mvl2e/config.hpp"
#include "mvl2e/dataset.hpp"
#include "mvl2e/embedding.hpp"

namespace mvl2e {

// Joint state of the alternating optimization: the centroid embedding, one
// embedding per view, and the fixed per-view weight matrices.
struct MvState {
  Embedding centroid;
  std::vector<Embedding> views;
  std::vector<WeightMatrix> weights;
  double gamma = 0.8;
};

struct OptimizationTrace {
  std::vector<double> objective_values;  // one per iteration
  Index iterations = 0;
  bool converged = false;
  double rel_change_at_stop = 0.0;
  // ||K*_t - K*_{t-1}||_F per iteration with K* = Y*^T Y*; a subspace-change
  // diagnostic alongside the objective test
  std::vector<double> centroid_gram_deltas;
};

// Linear-kernel agreement tr(Ya^T Ya Yb^T Yb); exactly symmetric in its
// arguments.
double agreement(const Embedding& ya, const Embedding& yb);

// gamma * sum_v agreement(Y*, Y^v) - sum_v Phi(Y^v, W^v).
double mv_objective(const MvState& state);

// Centroid update: top-d* eigenvectors of gamma * sum_v Y^v^T Y^v.
Embedding update_centroid(const std::vector<Embedding>& views, double gamma, Index d_star);

// View update: top-d_v eigenvectors of gamma * Y*^T Y* - (I-W)^T (I-W).
Embedding update_view(const Embedding& centroid, const WeightMatrix& w, double gamma, Index d_v);

// Full alternating loop: per-view weights and initial embeddings, then
// centroid/view updates until the relative objective change drops below
// cfg.tol or cfg.max_iters is reached.
std::pair<MvState, OptimizationTrace> mvl2e_fit(const MultiViewDataset& dataset,
                                                const PipelineConfig& cfg);

// Co-regularized multi-view spectral baseline: alternating top-d eigenvector
// updates of L^v + lambda * sum_{w != v} U^w^T U^w.
std::vector<Embedding> coregularized_fit(const std::vector<Matrix>& similarities, double lambda,
                                         Index d, Index max_iters);

}  // namespace mvl2e
