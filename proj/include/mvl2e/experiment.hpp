#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mvl2e/config.hpp"
#include "mvl2e/dataset.hpp"
#include "mvl2e/evaluation.hpp"
#include "mvl2e/multiview.hpp"

namespace mvl2e {

// One method x dimension cell of a sweep. Failed cells carry the error text
// instead of a report; other cells are unaffected.
struct SweepCell {
  std::string method;
  Index dimension = 0;
  bool ok = false;
  EvalReport report;
  std::string error;
};

struct SweepTable {
  std::vector<SweepCell> cells;
  // objective traces of the MvL2E fits, one per swept dimension
  std::vector<std::pair<Index, OptimizationTrace>> traces;
};

// Known method names for PipelineConfig::baselines.
std::vector<std::string> known_methods();

// Fits every enabled method at every dimension and evaluates with a shared
// seed schedule, so splits pair up across methods.
SweepTable dimension_sweep(const MultiViewDataset& dataset, const std::vector<Index>& dims,
                           const PipelineConfig& cfg);

// MvL2E centroid accuracy per gamma value at a fixed dimension.
SweepTable gamma_sweep(const MultiViewDataset& dataset, const std::vector<double>& gammas,
                       Index dim, const PipelineConfig& cfg);

// Loads config + dataset, runs the configured sweeps, writes result tables,
// traces, and the resolved config under out_dir.
void run_experiment(const std::filesystem::path& config_path,
                    const std::filesystem::path& out_dir,
                    const std::optional<std::string>& dataset_override = std::nullopt,
                    const std::optional<std::uint64_t>& seed_override = std::nullopt);

// Serializes a sweep table (with the resolved config as comment lines).
std::string render_results_csv(const SweepTable& table, const PipelineConfig& cfg);
std::string render_trace_csv(const OptimizationTrace& trace, const PipelineConfig& cfg);

}  // namespace mvl2e
