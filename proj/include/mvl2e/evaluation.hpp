#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvl2e/embedding.hpp"

namespace mvl2e {

struct EvalReport {
  std::vector<double> per_rep_accuracy;
  double mean_accuracy = 0.0;
  double max_accuracy = 0.0;
  double train_fraction = 0.0;
  Index repetitions = 0;
  std::uint64_t seed = 0;
};

// 1NN with Euclidean distance; ties broken by smaller training index.
std::vector<std::string> knn1_classify(const Matrix& train_coords,
                                       const std::vector<std::string>& train_labels,
                                       const Matrix& test_coords);

// Transductive protocol: the embedding is fixed; each repetition draws a
// seeded random permutation, takes floor(train_fraction * N) training
// samples, and scores 1NN accuracy on the rest. Repetition seeds derive from
// the master seed by a fixed counter scheme.
EvalReport split_eval(const Embedding& y, const std::vector<std::string>& labels,
                      double train_fraction, Index repetitions, std::uint64_t seed);

// Seeded shuffled index permutation for repetition `rep` under `seed`.
std::vector<Index> split_permutation(Index n, std::uint64_t seed, Index rep);

}  // namespace mvl2e
