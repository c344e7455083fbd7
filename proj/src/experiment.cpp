#include "mvl2e/experiment.hpp"

#include <algorithm>
#include <sstream>

#include "mvl2e/io_util.hpp"

namespace mvl2e {

namespace fs = std::filesystem;

namespace {

EvalReport eval_embedding(const Embedding& y, const MultiViewDataset& ds,
                          const PipelineConfig& cfg) {
  return split_eval(y, ds.labels, cfg.train_fraction, cfg.repetitions, cfg.seed);
}

void push_cell(SweepTable& table, const std::string& method, Index dim, EvalReport report) {
  SweepCell cell;
  cell.method = method;
  cell.dimension = dim;
  cell.ok = true;
  cell.report = std::move(report);
  table.cells.push_back(std::move(cell));
}

void push_error(SweepTable& table, const std::string& method, Index dim, const std::string& err) {
  SweepCell cell;
  cell.method = method;
  cell.dimension = dim;
  cell.error = err;
  table.cells.push_back(std::move(cell));
}

// Best-MEAN selection used by the single-view baselines.
void push_best(SweepTable& table, const std::string& method, Index dim,
               const std::vector<EvalReport>& reports) {
  const auto best = std::max_element(reports.begin(), reports.end(),
                                     [](const EvalReport& a, const EvalReport& b) {
                                       return a.mean_accuracy < b.mean_accuracy;
                                     });
  push_cell(table, method, dim, *best);
}

Matrix concat_views(const MultiViewDataset& ds) {
  Index total_rows = 0;
  for (const auto& [name, x] : ds.views) total_rows += x.rows();
  Matrix cat(total_rows, ds.n());
  Index at = 0;
  for (const auto& [name, x] : ds.views) {
    cat.middleRows(at, x.rows()) = x;
    at += x.rows();
  }
  return cat;
}

void run_method(SweepTable& table, const std::string& method, const MultiViewDataset& ds,
                Index dim, const PipelineConfig& cfg) {
  if (method == "mvl2e") {
    PipelineConfig fit_cfg = cfg;
    fit_cfg.d_views = {dim};
    fit_cfg.d_star = dim;
    auto [state, trace] = mvl2e_fit(ds, fit_cfg);
    table.traces.emplace_back(dim, std::move(trace));
    push_cell(table, "mvl2e", dim, eval_embedding(state.centroid, ds, cfg));
    for (Index v = 0; v < ds.m(); ++v) {
      push_cell(table, "mvl2e:" + ds.views[static_cast<size_t>(v)].first, dim,
                eval_embedding(state.views[static_cast<size_t>(v)], ds, cfg));
    }
  } else if (method == "l2e") {
    for (const auto& [name, x] : ds.views) {
      push_cell(table, "l2e:" + name, dim,
                eval_embedding(l2e_embed(x, cfg.k, cfg.reg, cfg.mu, dim), ds, cfg));
    }
  } else if (method == "blle") {
    std::vector<EvalReport> reports;
    for (const auto& [name, x] : ds.views) {
      reports.push_back(eval_embedding(lle_embed(x, cfg.k, cfg.reg, dim), ds, cfg));
      push_cell(table, "lle:" + name, dim, reports.back());
    }
    push_best(table, "blle", dim, reports);
  } else if (method == "ble") {
    std::vector<EvalReport> reports;
    for (const auto& [name, x] : ds.views) {
      reports.push_back(eval_embedding(spectral_embed(gaussian_similarity(x), dim), ds, cfg));
      push_cell(table, "le:" + name, dim, reports.back());
    }
    push_best(table, "ble", dim, reports);
  } else if (method == "clle") {
    push_cell(table, "clle", dim,
              eval_embedding(lle_embed(concat_views(ds), cfg.k, cfg.reg, dim), ds, cfg));
  } else if (method == "coregularized") {
    std::vector<Matrix> sims;
    for (const auto& [name, x] : ds.views) sims.push_back(gaussian_similarity(x));
    std::vector<Embedding> us = coregularized_fit(sims, cfg.coreg_lambda, dim, cfg.max_iters);
    std::vector<EvalReport> reports;
    for (const Embedding& u : us) reports.push_back(eval_embedding(u, ds, cfg));
    push_best(table, "coregularized", dim, reports);
  } else {
    throw ContractViolation("unknown method '" + method + "'");
  }
}

}  // namespace

std::vector<std::string> known_methods() {
  return {"mvl2e", "l2e", "blle", "ble", "clle", "coregularized"};
}

SweepTable dimension_sweep(const MultiViewDataset& dataset, const std::vector<Index>& dims,
                           const PipelineConfig& cfg) {
  if (dims.empty()) {
    throw ContractViolation("dimension_sweep: dims must be nonempty");
  }
  std::vector<std::string> methods = cfg.baselines;
  if (methods.empty()) methods = {"mvl2e", "l2e"};

  SweepTable table;
  for (Index dim : dims) {
    for (const std::string& method : methods) {
      try {
        run_method(table, method, dataset, dim, cfg);
      } catch (const std::exception& e) {
        push_error(table, method, dim, e.what());
      }
    }
  }
  return table;
}

SweepTable gamma_sweep(const MultiViewDataset& dataset, const std::vector<double>& gammas,
                       Index dim, const PipelineConfig& cfg) {
  if (gammas.empty()) {
    throw ContractViolation("gamma_sweep: gammas must be nonempty");
  }
  SweepTable table;
  for (double g : gammas) {
    PipelineConfig fit_cfg = cfg;
    fit_cfg.gamma = g;
    fit_cfg.d_views = {dim};
    fit_cfg.d_star = dim;
    const std::string method = "mvl2e@gamma=" + format_double(g);
    try {
      auto [state, trace] = mvl2e_fit(dataset, fit_cfg);
      table.traces.emplace_back(dim, std::move(trace));
      push_cell(table, method, dim, eval_embedding(state.centroid, dataset, cfg));
    } catch (const std::exception& e) {
      push_error(table, method, dim, e.what());
    }
  }
  return table;
}

std::string render_results_csv(const SweepTable& table, const PipelineConfig& cfg) {
  std::ostringstream out;
  std::istringstream cfg_lines(serialize_config(cfg));
  std::string line;
  while (std::getline(cfg_lines, line)) {
    out << "# " << line << "\n";
  }
  out << "method,dimension,mean_accuracy,max_accuracy\n";
  for (const SweepCell& cell : table.cells) {
    if (!cell.ok) continue;
    out << cell.method << "," << cell.dimension << ","
        << format_double(cell.report.mean_accuracy) << ","
        << format_double(cell.report.max_accuracy) << "\n";
  }
  return out.str();
}

std::string render_trace_csv(const OptimizationTrace& trace, const PipelineConfig& cfg) {
  std::ostringstream out;
  std::istringstream cfg_lines(serialize_config(cfg));
  std::string line;
  while (std::getline(cfg_lines, line)) {
    out << "# " << line << "\n";
  }
  out << "iteration,objective\n";
  for (size_t i = 0; i < trace.objective_values.size(); ++i) {
    out << (i + 1) << "," << format_double(trace.objective_values[i]) << "\n";
  }
  return out.str();
}

void run_experiment(const fs::path& config_path, const fs::path& out_dir,
                    const std::optional<std::string>& dataset_override,
                    const std::optional<std::uint64_t>& seed_override) {
  PipelineConfig cfg = load_config(config_path);
  if (dataset_override) cfg.dataset = *dataset_override;
  if (seed_override) cfg.seed = *seed_override;
  validate_config(cfg);
  if (cfg.dataset.empty()) {
    throw ContractViolation("run_experiment: no dataset manifest configured");
  }

  // relative dataset paths resolve against the config file's directory
  fs::path manifest(cfg.dataset);
  if (manifest.is_relative() && config_path.has_parent_path()) {
    if (!fs::exists(manifest) && fs::exists(config_path.parent_path() / manifest)) {
      manifest = config_path.parent_path() / manifest;
    }
  }
  MultiViewDataset ds = load_manifest(manifest);

  std::vector<Index> dims = cfg.dims;
  if (dims.empty()) dims = cfg.resolve_view_dims(ds.m());

  fs::create_directories(out_dir);
  SweepTable table = dimension_sweep(ds, dims, cfg);
  write_file_atomic(out_dir / "results.csv", render_results_csv(table, cfg));
  for (const auto& [dim, trace] : table.traces) {
    write_file_atomic(out_dir / ("trace_dim" + std::to_string(dim) + ".csv"),
                      render_trace_csv(trace, cfg));
  }

  if (!cfg.gammas.empty()) {
    SweepTable gt = gamma_sweep(ds, cfg.gammas, dims.front(), cfg);
    write_file_atomic(out_dir / "gamma_sweep.csv", render_results_csv(gt, cfg));
  }

  std::ostringstream errors;
  for (const SweepCell& cell : table.cells) {
    if (!cell.ok) {
      errors << cell.method << "," << cell.dimension << ": " << cell.error << "\n";
    }
  }
  const std::string error_text = errors.str();
  if (!error_text.empty()) {
    write_file_atomic(out_dir / "errors.log", error_text);
  }

  write_file_atomic(out_dir / "config.txt", serialize_config(cfg));
}

}  // namespace mvl2e
