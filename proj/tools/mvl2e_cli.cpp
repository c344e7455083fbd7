// Experiment CLI: multi-view embedding fits, baselines, sweeps, and
// synthetic dataset generation.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "mvl2e/experiment.hpp"
#include "mvl2e/io_util.hpp"

namespace fs = std::filesystem;
using namespace mvl2e;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string dataset_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_config) {
  auto* copt = cmd->add_option("--config", args.config_path, "experiment config file");
  if (need_config) copt->required();
  cmd->add_option("--dataset", args.dataset_path, "dataset manifest (overrides config)");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", [&args](const std::vector<std::string>& v) {
    args.seed = std::stoull(v.front());
    return true;
  }, "master seed (overrides config)")->expected(1);
}

PipelineConfig resolve_config(const CommonArgs& args) {
  PipelineConfig cfg = args.config_path.empty() ? PipelineConfig{} : load_config(args.config_path);
  if (!args.dataset_path.empty()) cfg.dataset = args.dataset_path;
  if (args.seed) cfg.seed = *args.seed;
  validate_config(cfg);
  return cfg;
}

MultiViewDataset load_dataset(const PipelineConfig& cfg, const CommonArgs& args) {
  if (cfg.dataset.empty()) {
    throw ContractViolation("no dataset given: use --dataset or the config's dataset key");
  }
  fs::path manifest(cfg.dataset);
  if (manifest.is_relative() && !args.config_path.empty()) {
    const fs::path beside_config = fs::path(args.config_path).parent_path() / manifest;
    if (!fs::exists(manifest) && fs::exists(beside_config)) manifest = beside_config;
  }
  return load_manifest(manifest);
}

void write_embedding(const fs::path& path, const Embedding& y) {
  std::ostringstream out;
  for (Index j = 0; j < y.d(); ++j) out << (j ? "," : "") << "c" << j;
  out << "\n";
  for (Index i = 0; i < y.n(); ++i) {  // samples as rows on disk
    for (Index j = 0; j < y.d(); ++j) {
      if (j) out << ",";
      out << format_double(y.coords(j, i));
    }
    out << "\n";
  }
  write_file_atomic(path, out.str());
}

void write_table(const fs::path& dir, const SweepTable& table, const PipelineConfig& cfg) {
  fs::create_directories(dir);
  write_file_atomic(dir / "results.csv", render_results_csv(table, cfg));
  for (const auto& [dim, trace] : table.traces) {
    write_file_atomic(dir / ("trace_dim" + std::to_string(dim) + ".csv"),
                      render_trace_csv(trace, cfg));
  }
  write_file_atomic(dir / "config.txt", serialize_config(cfg));
  for (const SweepCell& cell : table.cells) {
    if (!cell.ok) {
      std::cerr << "warning: " << cell.method << " at d=" << cell.dimension << " failed: "
                << cell.error << "\n";
    }
  }
}

int cmd_embed(const CommonArgs& args) {
  PipelineConfig cfg = resolve_config(args);
  MultiViewDataset ds = load_dataset(cfg, args);
  auto [state, trace] = mvl2e_fit(ds, cfg);
  fs::create_directories(args.out_dir);
  write_embedding(fs::path(args.out_dir) / "centroid.csv", state.centroid);
  for (Index v = 0; v < ds.m(); ++v) {
    write_embedding(fs::path(args.out_dir) /
                        ("view_" + ds.views[static_cast<size_t>(v)].first + ".csv"),
                    state.views[static_cast<size_t>(v)]);
  }
  write_file_atomic(fs::path(args.out_dir) / "trace.csv", render_trace_csv(trace, cfg));
  write_file_atomic(fs::path(args.out_dir) / "config.txt", serialize_config(cfg));
  std::cout << "converged=" << (trace.converged ? "true" : "false")
            << " iterations=" << trace.iterations << "\n";
  return 0;
}

int cmd_eval(const CommonArgs& args) {
  PipelineConfig cfg = resolve_config(args);
  MultiViewDataset ds = load_dataset(cfg, args);
  PipelineConfig sweep_cfg = cfg;
  sweep_cfg.baselines = {"mvl2e"};
  write_table(args.out_dir, dimension_sweep(ds, cfg.resolve_view_dims(ds.m()), sweep_cfg), cfg);
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  PipelineConfig cfg = resolve_config(args);
  MultiViewDataset ds = load_dataset(cfg, args);
  std::vector<Index> dims = cfg.dims.empty() ? cfg.resolve_view_dims(ds.m()) : cfg.dims;
  write_table(args.out_dir, dimension_sweep(ds, dims, cfg), cfg);
  return 0;
}

int cmd_gamma_sweep(const CommonArgs& args) {
  PipelineConfig cfg = resolve_config(args);
  MultiViewDataset ds = load_dataset(cfg, args);
  std::vector<double> gammas = cfg.gammas;
  if (gammas.empty()) gammas = {0.2, 0.4, 0.6, 0.8, 1.0};
  const Index dim = cfg.dims.empty() ? cfg.resolve_view_dims(ds.m()).front() : cfg.dims.front();
  SweepTable table = gamma_sweep(ds, gammas, dim, cfg);
  fs::create_directories(args.out_dir);
  write_file_atomic(fs::path(args.out_dir) / "gamma_sweep.csv", render_results_csv(table, cfg));
  write_file_atomic(fs::path(args.out_dir) / "config.txt", serialize_config(cfg));
  return 0;
}

int cmd_baselines(const CommonArgs& args) {
  PipelineConfig cfg = resolve_config(args);
  MultiViewDataset ds = load_dataset(cfg, args);
  std::vector<std::string> methods;
  for (const std::string& m : cfg.baselines.empty()
                                  ? std::vector<std::string>{"blle", "ble", "clle", "coregularized"}
                                  : cfg.baselines) {
    if (m != "mvl2e") methods.push_back(m);
  }
  PipelineConfig sweep_cfg = cfg;
  sweep_cfg.baselines = methods;
  std::vector<Index> dims = cfg.dims.empty() ? cfg.resolve_view_dims(ds.m()) : cfg.dims;
  write_table(args.out_dir, dimension_sweep(ds, dims, sweep_cfg), cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locality low-rank embedding (single- and multi-view) experiment tool"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* embed = app.add_subcommand("embed", "fit MvL2E and dump embeddings");
  add_common(embed, args, /*need_config=*/true);
  auto* eval = app.add_subcommand("eval", "fit MvL2E and run the 1NN split evaluation");
  add_common(eval, args, /*need_config=*/true);
  auto* sweep = app.add_subcommand("sweep", "dimension sweep over the configured methods");
  add_common(sweep, args, /*need_config=*/true);
  auto* gsweep = app.add_subcommand("gamma-sweep", "MvL2E accuracy per gamma value");
  add_common(gsweep, args, /*need_config=*/true);
  auto* baselines = app.add_subcommand("baselines", "run the enabled baselines only");
  add_common(baselines, args, /*need_config=*/true);

  auto* synth = app.add_subcommand("synth", "generate a synthetic multi-view dataset");
  SynthSpec spec;
  std::string synth_out = "synth_data";
  std::string manifold = "linear";
  std::uint64_t synth_seed = 0;
  long long n = 200, latent = 2;
  std::vector<long long> view_dims{8, 8};
  std::vector<double> sigmas{0.05, 0.05};
  synth->add_option("--n", n, "samples");
  synth->add_option("--latent-dim", latent, "latent dimension");
  synth->add_option("--view-dims", view_dims, "per-view ambient dimensions");
  synth->add_option("--noise-sigmas", sigmas, "per-view noise sigma");
  synth->add_option("--manifold", manifold, "linear | swiss_roll");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out", synth_out, "output directory");
  synth->add_flag("--shared-map", spec.shared_map, "use one projection for all views");

  try {
    app.parse(argc, argv);

    if (synth->parsed()) {
      spec.n = n;
      spec.latent_dim = latent;
      spec.view_dims.assign(view_dims.begin(), view_dims.end());
      spec.noise_sigmas = sigmas;
      spec.seed = synth_seed;
      if (manifold == "linear") spec.manifold = SynthManifold::Linear;
      else if (manifold == "swiss_roll") spec.manifold = SynthManifold::SwissRoll;
      else throw ContractViolation("unknown manifold '" + manifold + "'");
      const fs::path manifest = save_dataset(synth_multiview(spec), synth_out);
      std::cout << "wrote " << manifest.string() << "\n";
      return 0;
    }
    if (embed->parsed()) return cmd_embed(args);
    if (eval->parsed()) return cmd_eval(args);
    if (sweep->parsed()) return cmd_sweep(args);
    if (gsweep->parsed()) return cmd_gamma_sweep(args);
    if (baselines->parsed()) return cmd_baselines(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
