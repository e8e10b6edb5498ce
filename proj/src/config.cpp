#include "gpbose/config.hpp"

#include <fstream>
#include <sstream>

#include "gpbose/errors.hpp"

namespace gpbose {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string KeyValueConfig::emit() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return (it == values_.end()) ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (...) {
    throw ConfigError("config key '" + key + "': not a number: " + it->second);
  }
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (...) {
    throw ConfigError("config key '" + key + "': not an integer: " + it->second);
  }
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (...) {
    throw ConfigError("config key '" + key + "': not an unsigned integer: " + it->second);
  }
}

std::vector<double> KeyValueConfig::get_list(const std::string& key,
                                             const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const auto& part : split(it->second, ',')) {
    if (part.empty()) continue;
    try {
      out.push_back(std::stod(part));
    } catch (...) {
      throw ConfigError("config key '" + key + "': not a number list: " + it->second);
    }
  }
  return out;
}

RunConfig RunConfig::from_kv(const KeyValueConfig& kv) {
  RunConfig cfg;
  cfg.raw = kv;

  const std::string kind = kv.get("potential.kind", "square_well");
  if (kind == "zero") {
    cfg.potential = Potential::zero();
  } else if (kind == "square_well") {
    cfg.potential = Potential::square_well(kv.get_double("potential.v0", 2.0),
                                           kv.get_double("potential.radius", 1.0));
  } else if (kind == "tabulated") {
    const auto r = kv.get_list("potential.r", {});
    const auto v = kv.get_list("potential.v", {});
    cfg.potential = Potential::tabulated(r, v);
  } else {
    throw ConfigError("potential.kind must be zero, square_well or tabulated");
  }

  if (kv.has("N_grid")) {
    cfg.n_grid.clear();
    for (double v : kv.get_list("N_grid", {}))
      cfg.n_grid.push_back(static_cast<int>(v));
  } else {
    cfg.n_grid = {static_cast<int>(kv.get_long("N", 4))};
  }
  cfg.scatter_n = static_cast<int>(kv.get_long("scatter.N", 20));
  cfg.max_norm2 = kv.get_long("modes.max_norm2", 1);
  cfg.ell = kv.get_double("ell", 0.25);
  cfg.alpha = kv.get_double("cutoff.alpha", 3.5);
  cfg.beta = kv.get_double("cutoff.beta", 2.0);
  cfg.solver_tol = kv.get_double("solver.tol", 1e-10);
  cfg.max_iter = static_cast<int>(kv.get_long("solver.max_iter", 400));
  cfg.seed = kv.get_u64("seed", 1234);
  cfg.jobs = static_cast<int>(kv.get_long("jobs", 1));
  cfg.dim_budget = static_cast<std::size_t>(kv.get_long("basis.max_dim", 5'000'000));
  cfg.eta_radius_guard = kv.get_double("renorm.eta_radius_guard", 0.3);
  cfg.dense_dim_max =
      static_cast<std::size_t>(kv.get_long("renorm.dense_dim_max", 2000));
  cfg.krylov_tol = kv.get_double("renorm.krylov_tol", 1e-10);
  cfg.out_dir = kv.get("out", "out");
  cfg.delta_grid = kv.get_list("verify.delta_grid", cfg.delta_grid);
  cfg.m_list.clear();
  for (double v : kv.get_list("verify.m_list", {2, 4, 8}))
    cfg.m_list.push_back(static_cast<int>(v));
  cfg.partition_width = kv.get_double("partition.width", 4.0);
  cfg.partition_edge = kv.get_double("partition.edge", 0.25);
  cfg.sweep_k_eigs = static_cast<int>(kv.get_long("sweep.k_eigs", 4));
  cfg.sweep_k_grid = kv.get_list("sweep.k_grid", cfg.sweep_k_grid);
  const std::string pieces = kv.get("export.pieces", "");
  if (!pieces.empty()) cfg.export_pieces = split(pieces, ',');
  cfg.crossdiff_piece = kv.get("crossdiff.piece", "");
  cfg.crossdiff_file = kv.get("crossdiff.file", "");
  return cfg;
}

void RunConfig::validate(bool bounds_checks_requested) const {
  potential.validate();
  if (!(ell > 0.0))
    throw ConfigError("precondition violated: ell must be > 0");
  if (!(ell < 0.5))
    throw ConfigError("precondition violated: ell < 1/2 (Neumann ball inside the box)");
  for (int n : n_grid)
    if (n < 2) throw ConfigError("precondition violated: N >= 2");
  if (scatter_n < 2) throw ConfigError("precondition violated: scatter.N >= 2");
  if (!(scatter_n * ell > potential.support_radius()))
    throw ConfigError("precondition violated: scatter.N * ell > support radius of V");
  if (max_norm2 < 1) throw ConfigError("precondition violated: modes.max_norm2 >= 1");
  if (!(alpha > beta && beta > 0.0))
    throw ConfigError("precondition violated: alpha > beta > 0");
  if (bounds_checks_requested) {
    if (!(alpha > 3.0 && alpha / 2.0 < beta && beta < 2.0 * alpha / 3.0))
      throw ConfigError(
          "precondition violated: bounds checks need alpha > 3 and alpha/2 < beta < 2*alpha/3");
  }
  if (jobs < 1) throw ConfigError("precondition violated: jobs >= 1");
}

}  // namespace gpbose
