#include "mvl2e/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "mvl2e/errors.hpp"
#include "mvl2e/io_util.hpp"

namespace mvl2e {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Reads a samples-as-rows CSV table (header row of column ids) and returns it
// transposed to the in-memory D x N layout.
Matrix load_view_table(const fs::path& path, const std::string& view_name) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("view '" + view_name + "': cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("view '" + view_name + "': empty table " + path.string());
  }
  // header row carries column ids only; its width fixes the sample dimension
  const size_t dim = static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;

  std::vector<std::vector<double>> rows;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    row.reserve(dim);
    std::stringstream ss(line);
    std::string cell;
    size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      try {
        size_t used = 0;
        const double value = std::stod(trim(cell), &used);
        if (used != trim(cell).size()) throw std::invalid_argument("trailing characters");
        row.push_back(value);
      } catch (const std::exception&) {
        throw IoError("view '" + view_name + "': non-numeric cell at " + path.string() +
                      ":" + std::to_string(line_no) + " column " + std::to_string(col));
      }
    }
    if (row.size() != dim) {
      throw IoError("view '" + view_name + "': row " + std::to_string(line_no) + " has " +
                    std::to_string(row.size()) + " cells, header has " + std::to_string(dim));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw IoError("view '" + view_name + "': no data rows in " + path.string());
  }

  Matrix x(static_cast<Index>(dim), static_cast<Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < dim; ++j) {
      x(static_cast<Index>(j), static_cast<Index>(i)) = rows[i][j];
    }
  }
  return x;
}

std::vector<std::string> load_labels(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("labels: cannot open " + path.string());
  }
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) labels.push_back(line);
  }
  return labels;
}

// xorshift-free deterministic generators, stable across platforms
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct SynthRng {
  std::uint64_t state;
  double uniform() {  // [0, 1)
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  double normal() {  // Box-Muller, one draw per call pair folded into two calls
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
};

// Random matrix with orthonormal columns via QR of a Gaussian draw.
Matrix random_orthogonal_columns(Index rows, Index cols, SynthRng& rng) {
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      g(i, j) = rng.normal();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  return q;
}

}  // namespace

MultiViewDataset load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("manifest not found: " + path.string());
  }
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");

  MultiViewDataset ds;
  fs::path labels_path;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("manifest " + path.string() + ":" + std::to_string(line_no) +
                    ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "dataset.name") {
      ds.name = value;
    } else if (key == "labels") {
      labels_path = base / value;
    } else if (key.rfind("view.", 0) == 0) {
      const std::string view_name = key.substr(5);
      ds.views.emplace_back(view_name, load_view_table(base / value, view_name));
    } else {
      throw IoError("manifest " + path.string() + ":" + std::to_string(line_no) +
                    ": unknown key '" + key + "'");
    }
  }
  if (ds.views.empty()) {
    throw IoError("manifest " + path.string() + ": no views declared");
  }
  if (labels_path.empty()) {
    throw IoError("manifest " + path.string() + ": no labels entry");
  }
  ds.labels = load_labels(labels_path);

  const Index n = ds.views.front().second.cols();
  for (const auto& [name, x] : ds.views) {
    if (x.cols() != n) {
      throw IoError("alignment error: view '" + name + "' has " + std::to_string(x.cols()) +
                    " rows, expected " + std::to_string(n) + " (as in view '" +
                    ds.views.front().first + "')");
    }
  }
  if (static_cast<Index>(ds.labels.size()) != n) {
    throw IoError("alignment error: " + std::to_string(ds.labels.size()) +
                  " labels for " + std::to_string(n) + " samples");
  }
  return ds;
}

fs::path save_dataset(const MultiViewDataset& ds, const fs::path& dir) {
  fs::create_directories(dir);

  for (const auto& [name, x] : ds.views) {
    std::ostringstream out;
    for (Index j = 0; j < x.rows(); ++j) {
      out << (j ? "," : "") << "c" << j;
    }
    out << "\n";
    for (Index i = 0; i < x.cols(); ++i) {  // one sample per row on disk
      for (Index j = 0; j < x.rows(); ++j) {
        if (j) out << ",";
        out << format_double(x(j, i));
      }
      out << "\n";
    }
    write_file_atomic(dir / (name + ".csv"), out.str());
  }

  std::ostringstream labels_out;
  for (const std::string& label : ds.labels) {
    labels_out << label << "\n";
  }
  write_file_atomic(dir / "labels.txt", labels_out.str());

  std::ostringstream manifest;
  manifest << "dataset.name = " << ds.name << "\n";
  manifest << "labels = labels.txt\n";
  for (const auto& [name, x] : ds.views) {
    manifest << "view." << name << " = " << name << ".csv\n";
  }
  const fs::path manifest_path = dir / "manifest.txt";
  write_file_atomic(manifest_path, manifest.str());
  return manifest_path;
}

MultiViewDataset synth_multiview(const SynthSpec& spec) {
  if (spec.n < 10) {
    throw ContractViolation("synth_multiview: n must be at least 10");
  }
  if (spec.view_dims.empty() || spec.view_dims.size() != spec.noise_sigmas.size()) {
    throw ContractViolation("synth_multiview: view_dims and noise_sigmas must be nonempty and equal length");
  }
  const Index latent_rows = spec.manifold == SynthManifold::SwissRoll ? 3 : spec.latent_dim;
  for (Index dv : spec.view_dims) {
    if (dv < latent_rows) {
      throw ContractViolation("synth_multiview: view dimension below latent dimension");
    }
  }
  if (spec.shared_map) {
    for (Index dv : spec.view_dims) {
      if (dv != spec.view_dims.front()) {
        throw ContractViolation("synth_multiview: shared_map requires equal view_dims");
      }
    }
  }

  SynthRng rng{splitmix64(spec.seed ^ 0xC0FFEEULL)};

  Matrix latent(latent_rows, spec.n);
  std::vector<std::string> labels(static_cast<size_t>(spec.n));
  if (spec.manifold == SynthManifold::Linear) {
    if (spec.latent_dim < 1) {
      throw ContractViolation("synth_multiview: latent_dim must be >= 1");
    }
    for (Index i = 0; i < spec.n; ++i) {
      for (Index j = 0; j < spec.latent_dim; ++j) {
        latent(j, i) = 2.0 * rng.uniform() - 1.0;
      }
      // class = quadrant of the first two latent coordinates
      const int qa = latent(0, i) >= 0.0 ? 1 : 0;
      const int qb = (spec.latent_dim > 1 && latent(1, i) >= 0.0) ? 1 : 0;
      labels[static_cast<size_t>(i)] = "c" + std::to_string(qa * 2 + qb);
    }
  } else {
    // standard swiss roll: (t cos t, h, t sin t), t in [1.5pi, 4.5pi]
    for (Index i = 0; i < spec.n; ++i) {
      const double u = rng.uniform();
      const double t = 1.5 * std::numbers::pi * (1.0 + 2.0 * u);
      const double h = 21.0 * rng.uniform();
      latent(0, i) = t * std::cos(t);
      latent(1, i) = h;
      latent(2, i) = t * std::sin(t);
      labels[static_cast<size_t>(i)] = "arc" + std::to_string(std::min(3, static_cast<int>(u * 4.0)));
    }
  }

  MultiViewDataset ds;
  ds.name = "synthetic";
  ds.labels = std::move(labels);
  Matrix shared;
  if (spec.shared_map) {
    shared = random_orthogonal_columns(spec.view_dims.front(), latent_rows, rng);
  }
  for (size_t v = 0; v < spec.view_dims.size(); ++v) {
    const Index dv = spec.view_dims[v];
    Matrix map = spec.shared_map ? shared : random_orthogonal_columns(dv, latent_rows, rng);
    Matrix x = map * latent;
    const double sigma = spec.noise_sigmas[v];
    if (sigma > 0.0) {
      for (Index i = 0; i < x.rows(); ++i) {
        for (Index j = 0; j < x.cols(); ++j) {
          x(i, j) += sigma * rng.normal();
        }
      }
    }
    ds.views.emplace_back("view" + std::to_string(v), std::move(x));
  }
  return ds;
}

}  // namespace mvl2e
