#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gpbose/potential.hpp"

namespace gpbose {

//! Plain-text key-value configuration with dotted section names.
//! `key = value` per line, '#' starts a comment. Emission is sorted, so
//! parse -> emit -> parse round-trips exactly.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);
  std::string emit() const;

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

//! Typed run configuration shared by the CLI subcommands.
struct RunConfig {
  Potential potential;
  std::vector<int> n_grid{4};
  int scatter_n = 20;           // reference N of the radial Neumann problem
  long max_norm2 = 1;
  double ell = 0.25;
  double alpha = 3.5;
  double beta = 2.0;
  double solver_tol = 1e-10;
  int max_iter = 400;
  std::uint64_t seed = 1234;
  int jobs = 1;
  std::size_t dim_budget = 5'000'000;
  double eta_radius_guard = 0.3;
  std::size_t dense_dim_max = 2000;
  double krylov_tol = 1e-10;
  std::string out_dir = "out";
  // verify/sweep knobs
  std::vector<double> delta_grid{0.25, 0.5, 1.0};
  std::vector<int> m_list{2, 4, 8};
  double partition_width = 4.0;
  double partition_edge = 0.25;
  int sweep_k_eigs = 4;
  std::vector<double> sweep_k_grid{0.0, 1.0, 2.0};
  std::vector<std::string> export_pieces;
  std::string crossdiff_piece, crossdiff_file;

  KeyValueConfig raw;

  static RunConfig from_kv(const KeyValueConfig& kv);
  // Throws ConfigError naming the violated precondition.
  void validate(bool bounds_checks_requested) const;
};

}  // namespace gpbose
