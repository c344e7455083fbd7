#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mvl2e/numerics.hpp"

namespace mvl2e {

// Column-aligned views of the same N samples. In memory each view is D^v x N
// (samples as columns); on disk the tables are samples-as-rows.
struct MultiViewDataset {
  std::string name;
  std::vector<std::pair<std::string, Matrix>> views;
  std::vector<std::string> labels;

  Index n() const { return views.empty() ? 0 : views.front().second.cols(); }
  Index m() const { return static_cast<Index>(views.size()); }
};

enum class SynthManifold { Linear, SwissRoll };

struct SynthSpec {
  Index n = 200;
  Index latent_dim = 2;
  std::vector<Index> view_dims;
  std::vector<double> noise_sigmas;
  SynthManifold manifold = SynthManifold::Linear;
  std::uint64_t seed = 0;
  bool shared_map = false;  // reuse one projection across views (requires equal view_dims)
};

// Reads a manifest naming one table file per view plus one label file.
MultiViewDataset load_manifest(const std::filesystem::path& path);

// Writes manifest + per-view tables + labels under dir; returns manifest path.
std::filesystem::path save_dataset(const MultiViewDataset& ds, const std::filesystem::path& dir);

// Seeded synthetic multi-view data: latent points mapped into each view by a
// random orthogonal-column linear map plus isotropic Gaussian noise; class
// labels by latent quadrant (linear) or arc segment (swiss roll).
MultiViewDataset synth_multiview(const SynthSpec& spec);

}  // namespace mvl2e
