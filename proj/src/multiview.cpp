#include "mvl2e/multiview.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace mvl2e {

namespace {

Matrix gram(const Embedding& y) { return y.coords.transpose() * y.coords; }

double view_operand_value(const Embedding& y, const Matrix& op) {
  return (y.coords * op * y.coords.transpose()).trace();
}

}  // namespace

double agreement(const Embedding& ya, const Embedding& yb) {
  if (ya.n() != yb.n()) {
    throw InconsistentInput("agreement: sample counts differ, " + std::to_string(ya.n()) +
                            " vs " + std::to_string(yb.n()));
  }
  // elementwise product of the two Gram matrices; each term commutes exactly,
  // so the value is bit-identical under argument swap
  return gram(ya).cwiseProduct(gram(yb)).sum();
}

double mv_objective(const MvState& state) {
  if (state.views.size() != state.weights.size()) {
    throw InconsistentInput("mv_objective: views and weights lists differ in length");
  }
  double agree = 0.0;
  double recon = 0.0;
  for (size_t v = 0; v < state.views.size(); ++v) {
    agree += agreement(state.centroid, state.views[v]);
    recon += reconstruction_cost(state.views[v], state.weights[v]);
  }
  return state.gamma * agree - recon;
}

Embedding update_centroid(const std::vector<Embedding>& views, double gamma, Index d_star) {
  if (!(gamma > 0.0)) {
    throw ContractViolation("update_centroid: gamma must be positive (the operand vanishes)");
  }
  if (views.empty()) {
    throw ContractViolation("update_centroid: need at least one view");
  }
  const Index n = views.front().n();
  Matrix l_star = Matrix::Zero(n, n);
  for (const Embedding& y : views) {
    if (y.n() != n) {
      throw InconsistentInput("update_centroid: views disagree on sample count");
    }
    l_star += gamma * gram(y);
  }
  EigResult eig = sym_eig(l_star, {d_star, EigWhich::Largest, /*skip_null=*/false});
  return {eig.eigenvectors.transpose()};
}

Embedding update_view(const Embedding& centroid, const WeightMatrix& w, double gamma, Index d_v) {
  if (centroid.n() != w.n) {
    throw InconsistentInput("update_view: centroid has " + std::to_string(centroid.n()) +
                            " samples, weights have " + std::to_string(w.n));
  }
  Matrix iw = Matrix::Identity(w.n, w.n) - w.dense();
  Matrix op = gamma * gram(centroid) - iw.transpose() * iw;
  op = 0.5 * (op + op.transpose());
  EigResult eig = sym_eig(op, {d_v, EigWhich::Largest, /*skip_null=*/false});
  return {eig.eigenvectors.transpose()};
}

std::pair<MvState, OptimizationTrace> mvl2e_fit(const MultiViewDataset& dataset,
                                                const PipelineConfig& cfg) {
  const Index m = dataset.m();
  if (m < 1) {
    throw ContractViolation("mvl2e_fit: dataset has no views");
  }
  const std::vector<Index> d_views = cfg.resolve_view_dims(m);
  const Index d_star = cfg.resolve_d_star(m);

  MvState state;
  state.gamma = cfg.gamma;
  state.views.reserve(static_cast<size_t>(m));
  state.weights.reserve(static_cast<size_t>(m));
  for (Index v = 0; v < m; ++v) {
    const Matrix& x = dataset.views[static_cast<size_t>(v)].second;
    try {
      NeighborDictionary nd = knn_dictionary(x, cfg.k);
      LocalCodes codes = low_rank_refine(local_codes(x, nd, cfg.reg), cfg.mu);
      state.weights.push_back(assemble_weight_matrix(codes, nd));
      state.views.push_back(embed_from_weights(state.weights.back(), d_views[static_cast<size_t>(v)]));
    } catch (const std::exception& e) {
      throw std::runtime_error("mvl2e_fit: view " + std::to_string(v) + " (" +
                               dataset.views[static_cast<size_t>(v)].first +
                               ") setup failed: " + e.what());
    }
  }

  OptimizationTrace trace;
  double prev_obj = 0.0;
  Matrix prev_centroid_gram;
  for (Index it = 0; it < cfg.max_iters; ++it) {
    try {
      state.centroid = update_centroid(state.views, cfg.gamma, d_star);
      for (Index v = 0; v < m; ++v) {
        state.views[static_cast<size_t>(v)] = update_view(
            state.centroid, state.weights[static_cast<size_t>(v)], cfg.gamma,
            d_views[static_cast<size_t>(v)]);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("mvl2e_fit: iteration " + std::to_string(it + 1) +
                               " failed: " + e.what());
    }

    const double obj = mv_objective(state);
    trace.objective_values.push_back(obj);
    Matrix cg = gram(state.centroid);
    trace.centroid_gram_deltas.push_back(
        it == 0 ? std::numeric_limits<double>::quiet_NaN() : (cg - prev_centroid_gram).norm());
    prev_centroid_gram = std::move(cg);
    trace.iterations = it + 1;

    if (it > 0) {
      const double rel = std::abs(obj - prev_obj) / std::max(1.0, std::abs(prev_obj));
      trace.rel_change_at_stop = rel;
      if (rel < cfg.tol) {
        trace.converged = true;
        break;
      }
    }
    prev_obj = obj;
  }
  return {std::move(state), std::move(trace)};
}

std::vector<Embedding> coregularized_fit(const std::vector<Matrix>& similarities, double lambda,
                                         Index d, Index max_iters) {
  if (!(lambda >= 0.0)) {
    throw ContractViolation("coregularized_fit: lambda must be nonnegative");
  }
  const Index m = static_cast<Index>(similarities.size());
  if (m < 1) {
    throw ContractViolation("coregularized_fit: need at least one similarity matrix");
  }

  std::vector<Matrix> laplacians;
  std::vector<Embedding> views;
  laplacians.reserve(similarities.size());
  views.reserve(similarities.size());
  for (const Matrix& s : similarities) {
    Vector row_sums = s.rowwise().sum();
    for (Index i = 0; i < s.rows(); ++i) {
      if (row_sums[i] <= 0.0) {
        throw DegenerateGeometry("coregularized_fit: zero row sum at sample " +
                                 std::to_string(i));
      }
    }
    Vector inv_sqrt = row_sums.array().rsqrt();
    laplacians.push_back(inv_sqrt.asDiagonal() * s * inv_sqrt.asDiagonal());
    views.push_back(spectral_embed(s, d));
  }

  auto objective = [&]() {
    double total = 0.0;
    for (Index v = 0; v < m; ++v) {
      total += view_operand_value(views[static_cast<size_t>(v)], laplacians[static_cast<size_t>(v)]);
    }
    for (Index v = 0; v < m; ++v) {
      for (Index w = v + 1; w < m; ++w) {
        total += lambda * agreement(views[static_cast<size_t>(v)], views[static_cast<size_t>(w)]);
      }
    }
    return total;
  };

  double prev = objective();
  for (Index it = 0; it < max_iters; ++it) {
    for (Index v = 0; v < m; ++v) {
      Matrix op = laplacians[static_cast<size_t>(v)];
      for (Index w = 0; w < m; ++w) {
        if (w == v) continue;
        op += lambda * gram(views[static_cast<size_t>(w)]);
      }
      op = 0.5 * (op + op.transpose());
      EigResult eig = sym_eig(op, {d, EigWhich::Largest, /*skip_null=*/false});
      views[static_cast<size_t>(v)] = {eig.eigenvectors.transpose()};
    }
    const double cur = objective();
    if (std::abs(cur - prev) / std::max(1.0, std::abs(prev)) < 1e-6) break;
    prev = cur;
  }
  return views;
}

}  // namespace mvl2e
