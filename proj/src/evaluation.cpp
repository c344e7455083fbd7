#include "mvl2e/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mvl2e {

namespace {

// SplitMix64: fixed counter scheme mapping (master seed, rep) to a stream.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct SplitMixRng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = splitmix64(state);
    state += 0x9E3779B97F4A7C15ULL;
    return z;
  }
  // uniform in [0, bound) by rejection, bias-free
  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % bound;
  }
};

}  // namespace

std::vector<std::string> knn1_classify(const Matrix& train_coords,
                                       const std::vector<std::string>& train_labels,
                                       const Matrix& test_coords) {
  const Index t = train_coords.cols();
  if (t < 1) {
    throw ContractViolation("knn1_classify: empty training set");
  }
  if (static_cast<Index>(train_labels.size()) != t) {
    throw InconsistentInput("knn1_classify: " + std::to_string(t) + " training columns but " +
                            std::to_string(train_labels.size()) + " labels");
  }
  if (train_coords.rows() != test_coords.rows()) {
    throw InconsistentInput("knn1_classify: train and test dimensions differ");
  }

  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(test_coords.cols()));
  for (Index j = 0; j < test_coords.cols(); ++j) {
    Index best = 0;
    double best_d2 = (train_coords.col(0) - test_coords.col(j)).squaredNorm();
    for (Index i = 1; i < t; ++i) {
      const double d2 = (train_coords.col(i) - test_coords.col(j)).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    out.push_back(train_labels[static_cast<size_t>(best)]);
  }
  return out;
}

std::vector<Index> split_permutation(Index n, std::uint64_t seed, Index rep) {
  std::vector<Index> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  SplitMixRng rng{splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(rep) + 1)};
  for (Index i = n - 1; i > 0; --i) {
    const Index j = static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
  }
  return perm;
}

EvalReport split_eval(const Embedding& y, const std::vector<std::string>& labels,
                      double train_fraction, Index repetitions, std::uint64_t seed) {
  const Index n = y.n();
  if (static_cast<Index>(labels.size()) != n) {
    throw InconsistentInput("split_eval: " + std::to_string(n) + " samples but " +
                            std::to_string(labels.size()) + " labels");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ContractViolation("split_eval: train_fraction must be in (0,1)");
  }
  if (repetitions < 1) {
    throw ContractViolation("split_eval: repetitions must be >= 1");
  }
  const Index n_train = static_cast<Index>(std::floor(train_fraction * static_cast<double>(n)));
  const Index n_test = n - n_train;
  if (n_train < 1 || n_test < 1) {
    throw ContractViolation("split_eval: split leaves an empty train or test set (N=" +
                            std::to_string(n) + ", train=" + std::to_string(n_train) + ")");
  }

  EvalReport report;
  report.train_fraction = train_fraction;
  report.repetitions = repetitions;
  report.seed = seed;
  report.per_rep_accuracy.resize(static_cast<size_t>(repetitions));

  Matrix train_coords(y.d(), n_train);
  Matrix test_coords(y.d(), n_test);
  std::vector<std::string> train_labels(static_cast<size_t>(n_train));
  for (Index rep = 0; rep < repetitions; ++rep) {
    const std::vector<Index> perm = split_permutation(n, seed, rep);
    for (Index i = 0; i < n_train; ++i) {
      train_coords.col(i) = y.coords.col(perm[static_cast<size_t>(i)]);
      train_labels[static_cast<size_t>(i)] = labels[static_cast<size_t>(perm[static_cast<size_t>(i)])];
    }
    for (Index i = 0; i < n_test; ++i) {
      test_coords.col(i) = y.coords.col(perm[static_cast<size_t>(n_train + i)]);
    }
    const std::vector<std::string> predicted = knn1_classify(train_coords, train_labels, test_coords);
    Index correct = 0;
    for (Index i = 0; i < n_test; ++i) {
      if (predicted[static_cast<size_t>(i)] ==
          labels[static_cast<size_t>(perm[static_cast<size_t>(n_train + i)])]) {
        ++correct;
      }
    }
    report.per_rep_accuracy[static_cast<size_t>(rep)] =
        static_cast<double>(correct) / static_cast<double>(n_test);
  }
  report.mean_accuracy = std::accumulate(report.per_rep_accuracy.begin(),
                                         report.per_rep_accuracy.end(), 0.0) /
                         static_cast<double>(repetitions);
  report.max_accuracy = *std::max_element(report.per_rep_accuracy.begin(),
                                          report.per_rep_accuracy.end());
  return report;
}

}  // namespace mvl2e
