#include "mvl2e/config.hpp"

#include <fstream>
#include <sstream>

#include "mvl2e/errors.hpp"
#include "mvl2e/io_util.hpp"

namespace mvl2e {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw IoError("config: key '" + key + "' has non-numeric value '" + value + "'");
  }
}

Index parse_count(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return static_cast<Index>(v);
  } catch (const std::exception&) {
    throw IoError("config: key '" + key + "' has non-integer value '" + value + "'");
  }
}

}  // namespace

std::vector<Index> PipelineConfig::resolve_view_dims(Index m) const {
  if (d_views.empty()) {
    throw ContractViolation("config: d_views is required");
  }
  if (static_cast<Index>(d_views.size()) == m) return d_views;
  if (d_views.size() == 1) return std::vector<Index>(static_cast<size_t>(m), d_views.front());
  throw ContractViolation("config: d_views has " + std::to_string(d_views.size()) +
                          " entries for " + std::to_string(m) + " views");
}

Index PipelineConfig::resolve_d_star(Index m) const {
  if (d_star > 0) return d_star;
  const std::vector<Index> dims_v = resolve_view_dims(m);
  for (Index dv : dims_v) {
    if (dv != dims_v.front()) {
      throw ContractViolation(
          "config: d_star must be set explicitly when per-view dims differ");
    }
  }
  return dims_v.front();
}

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig cfg;
  std::stringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "k") cfg.k = parse_count(key, value);
    else if (key == "reg") cfg.reg = parse_real(key, value);
    else if (key == "mu") cfg.mu = parse_real(key, value);
    else if (key == "gamma") cfg.gamma = parse_real(key, value);
    else if (key == "d_views") {
      cfg.d_views.clear();
      for (const std::string& item : split_list(value)) cfg.d_views.push_back(parse_count(key, item));
    } else if (key == "d_star") cfg.d_star = parse_count(key, value);
    else if (key == "tol") cfg.tol = parse_real(key, value);
    else if (key == "max_iters") cfg.max_iters = parse_count(key, value);
    else if (key == "train_fraction") cfg.train_fraction = parse_real(key, value);
    else if (key == "repetitions") cfg.repetitions = parse_count(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (key == "baselines") cfg.baselines = split_list(value);
    else if (key == "dataset") cfg.dataset = value;
    else if (key == "dims") {
      cfg.dims.clear();
      for (const std::string& item : split_list(value)) cfg.dims.push_back(parse_count(key, item));
    } else if (key == "gammas") {
      cfg.gammas.clear();
      for (const std::string& item : split_list(value)) cfg.gammas.push_back(parse_real(key, item));
    } else if (key == "coreg_lambda") cfg.coreg_lambda = parse_real(key, value);
    else {
      throw IoError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("config not found: " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const PipelineConfig& cfg) {
  std::ostringstream out;
  out << "k = " << cfg.k << "\n";
  out << "reg = " << format_double(cfg.reg) << "\n";
  out << "mu = " << format_double(cfg.mu) << "\n";
  out << "gamma = " << format_double(cfg.gamma) << "\n";
  out << "d_views = ";
  for (size_t i = 0; i < cfg.d_views.size(); ++i) out << (i ? "," : "") << cfg.d_views[i];
  out << "\n";
  out << "d_star = " << cfg.d_star << "\n";
  out << "tol = " << format_double(cfg.tol) << "\n";
  out << "max_iters = " << cfg.max_iters << "\n";
  out << "train_fraction = " << format_double(cfg.train_fraction) << "\n";
  out << "repetitions = " << cfg.repetitions << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "baselines = ";
  for (size_t i = 0; i < cfg.baselines.size(); ++i) out << (i ? "," : "") << cfg.baselines[i];
  out << "\n";
  if (!cfg.dataset.empty()) out << "dataset = " << cfg.dataset << "\n";
  out << "dims = ";
  for (size_t i = 0; i < cfg.dims.size(); ++i) out << (i ? "," : "") << cfg.dims[i];
  out << "\n";
  out << "gammas = ";
  for (size_t i = 0; i < cfg.gammas.size(); ++i) out << (i ? "," : "") << format_double(cfg.gammas[i]);
  out << "\n";
  out << "coreg_lambda = " << format_double(cfg.coreg_lambda) << "\n";
  return out.str();
}

void validate_config(const PipelineConfig& cfg) {
  if (cfg.k < 1) throw ContractViolation("config: k must be >= 1");
  if (!(cfg.reg >= 0.0)) throw ContractViolation("config: reg must be nonnegative");
  if (!(cfg.mu >= 0.0)) throw ContractViolation("config: mu must be nonnegative");
  if (!(cfg.tol > 0.0)) throw ContractViolation("config: tol must be positive");
  if (cfg.max_iters < 1) throw ContractViolation("config: max_iters must be >= 1");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw ContractViolation("config: train_fraction must be in (0,1)");
  }
  if (cfg.repetitions < 1) throw ContractViolation("config: repetitions must be >= 1");
}

}  // namespace mvl2e
