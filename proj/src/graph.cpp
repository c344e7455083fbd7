#include "mvl2e/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mvl2e {

NeighborDictionary knn_dictionary(const Matrix& x, Index k) {
  if (!x.allFinite()) {
    throw ContractViolation("knn_dictionary: view matrix must be finite");
  }
  const Index n = x.cols();
  if (k < 1 || k > n - 1) {
    throw ContractViolation("knn_dictionary: k must be in [1, N-1], got k=" +
                            std::to_string(k) + " with N=" + std::to_string(n));
  }

  NeighborDictionary nd;
  nd.n_samples = n;
  nd.k = k;
  nd.neighbor_indices.resize(static_cast<size_t>(n));

  std::vector<Index> order(static_cast<size_t>(n - 1));
  Vector sq_norms = x.colwise().squaredNorm();
  for (Index i = 0; i < n; ++i) {
    // d2(i,j) = |xi|^2 + |xj|^2 - 2 xi.xj, recomputed exactly for the sort key
    Vector d2(n);
    for (Index j = 0; j < n; ++j) {
      d2[j] = (x.col(i) - x.col(j)).squaredNorm();
    }
    Index pos = 0;
    for (Index j = 0; j < n; ++j) {
      if (j != i) order[static_cast<size_t>(pos++)] = j;
    }
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      if (d2[a] != d2[b]) return d2[a] < d2[b];
      return a < b;
    });
    nd.neighbor_indices[static_cast<size_t>(i)].assign(order.begin(), order.begin() + k);
  }
  return nd;
}

LocalCodes local_codes(const Matrix& x, const NeighborDictionary& nd, double reg) {
  if (!(reg >= 0.0)) {
    throw ContractViolation("local_codes: reg must be nonnegative");
  }
  const Index n = x.cols();
  if (nd.n_samples != n) {
    throw InconsistentInput("local_codes: dictionary built for " +
                            std::to_string(nd.n_samples) + " samples, view has " +
                            std::to_string(n));
  }
  const Index k = nd.k;

  LocalCodes lc;
  lc.codes.resize(k, n);
  lc.residual_norms.resize(n);

  Matrix diffs(x.rows(), k);
  for (Index i = 0; i < n; ++i) {
    const auto& nbrs = nd.neighbor_indices[static_cast<size_t>(i)];
    for (Index r = 0; r < k; ++r) {
      diffs.col(r) = x.col(i) - x.col(nbrs[static_cast<size_t>(r)]);
    }
    Matrix gram = diffs.transpose() * diffs;
    gram.diagonal().array() += reg * gram.trace() / static_cast<double>(k);

    Vector w = gram.ldlt().solve(Vector::Ones(k));
    const double solve_scale =
        std::max(1.0, gram.cwiseAbs().maxCoeff() * w.cwiseAbs().maxCoeff());
    if (!w.allFinite() ||
        (gram * w - Vector::Ones(k)).cwiseAbs().maxCoeff() > 1e-6 * solve_scale) {
      throw DegenerateGeometry("local_codes: singular local Gram system at sample " +
                               std::to_string(i) + " (increase reg)");
    }
    const double total = w.sum();
    if (!std::isfinite(total) || std::abs(total) < 1e-12) {
      throw DegenerateGeometry("local_codes: degenerate neighbor geometry at sample " +
                               std::to_string(i));
    }
    lc.codes.col(i) = w / total;

    Vector recon = Vector::Zero(x.rows());
    for (Index r = 0; r < k; ++r) {
      recon += lc.codes(r, i) * x.col(nbrs[static_cast<size_t>(r)]);
    }
    lc.residual_norms[i] = (x.col(i) - recon).norm();
  }
  return lc;
}

LocalCodes low_rank_refine(const LocalCodes& codes, double mu) {
  if (!(mu >= 0.0)) {
    throw ContractViolation("low_rank_refine: mu must be nonnegative");
  }
  const Vector sigma = svd(codes.codes).singular_values;
  const double sigma_max = sigma.size() > 0 ? sigma[0] : 0.0;
  Matrix refined = svt(codes.codes, mu * sigma_max);

  LocalCodes out;
  out.codes.resize(codes.k(), codes.n());
  out.residual_norms = codes.residual_norms;
  for (Index i = 0; i < codes.n(); ++i) {
    const double s = refined.col(i).sum();
    if (std::abs(s) < 1e-8) {
      out.codes.col(i) = codes.codes.col(i);  // SVT wiped the column; keep stage-1 weights
    } else {
      out.codes.col(i) = refined.col(i) / s;
    }
  }
  return out;
}

WeightMatrix assemble_weight_matrix(const LocalCodes& codes, const NeighborDictionary& nd) {
  if (codes.n() != nd.n_samples || codes.k() != nd.k) {
    throw InconsistentInput("assemble_weight_matrix: codes are " +
                            std::to_string(codes.k()) + "x" + std::to_string(codes.n()) +
                            " but dictionary has N=" + std::to_string(nd.n_samples) +
                            ", K=" + std::to_string(nd.k));
  }
  const Index n = nd.n_samples;
  const Index k = nd.k;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(n * k));
  for (Index i = 0; i < n; ++i) {
    for (Index r = 0; r < k; ++r) {
      triplets.emplace_back(i, nd.neighbor_indices[static_cast<size_t>(i)][static_cast<size_t>(r)],
                            codes.codes(r, i));
    }
  }
  WeightMatrix wm;
  wm.n = n;
  wm.w.resize(n, n);
  wm.w.setFromTriplets(triplets.begin(), triplets.end());
  wm.w.makeCompressed();
  return wm;
}

}  // namespace mvl2e
