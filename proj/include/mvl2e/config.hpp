#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mvl2e/numerics.hpp"

namespace mvl2e {

// All experiment knobs with their defaults materialized. Serialized as flat
// key = value text; field names match the keys exactly.
struct PipelineConfig {
  Index k = 10;             // neighbors per sample
  double reg = 1e-3;        // local Gram regularizer (relative)
  double mu = 0.05;         // SVT threshold as a fraction of sigma_max
  double gamma = 0.8;       // agreement/reconstruction trade-off
  std::vector<Index> d_views;  // per-view dims; a single entry is shared by all views
  Index d_star = 0;         // centroid dim; 0 = inherit the common view dim
  double tol = 1e-6;
  Index max_iters = 100;
  double train_fraction = 0.8;
  Index repetitions = 30;
  std::uint64_t seed = 42;
  std::vector<std::string> baselines;  // method names: mvl2e,l2e,blle,ble,clle,coregularized
  std::string dataset;                 // manifest path (optional; CLI may override)
  std::vector<Index> dims;             // sweep dimensions
  std::vector<double> gammas;          // gamma-sweep values
  double coreg_lambda = 0.5;           // co-regularization strength for the baseline

  // Resolved per-view dimension list for a dataset with m views.
  std::vector<Index> resolve_view_dims(Index m) const;
  Index resolve_d_star(Index m) const;
};

PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(const std::string& text);
std::string serialize_config(const PipelineConfig& cfg);
void validate_config(const PipelineConfig& cfg);

}  // namespace mvl2e
