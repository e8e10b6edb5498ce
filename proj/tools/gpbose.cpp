#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "gpbose/csvio.hpp"
#include "gpbose/errors.hpp"
#include "gpbose/verify_suites.hpp"

namespace fs = std::filesystem;
using namespace gpbose;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out_dir;
  int jobs = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

RunConfig load_config(const GlobalArgs& g) {
  RunConfig cfg = RunConfig::from_kv(KeyValueConfig::load(g.config_path));
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  if (g.jobs > 0) cfg.jobs = g.jobs;
  if (g.seed_set) cfg.seed = g.seed;
  fs::create_directories(cfg.out_dir);
  return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

nlohmann::json manifest_header(const RunConfig& cfg) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  j["config"] = cfg.raw.values();
  return j;
}

int cmd_scatter(const RunConfig& cfg) {
  cfg.validate(false);
  const ScatteringSolution sol = solve_neumann(cfg.potential, cfg.scatter_n, cfg.ell);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < sol.r_grid.size(); ++i)
    rows.push_back({format_sig17(sol.r_grid[i]), format_sig17(sol.f_samples[i]),
                    format_sig17(sol.w_samples[i])});
  write_text_file(out_path(cfg, "scattering.csv"), render_csv({"r", "f", "w"}, rows));

  nlohmann::json j = manifest_header(cfg);
  j["N"] = cfg.scatter_n;
  j["ell"] = cfg.ell;
  j["lambda"] = sol.lambda_ell;
  j["a0"] = sol.a0;
  j["relation_residual"] = verify_scattering_relation(sol);
  write_text_file(out_path(cfg, "scattering.json"), j.dump(2) + "\n");
  std::cout << "a0 = " << format_sig17(sol.a0)
            << "  lambda = " << format_sig17(sol.lambda_ell) << "\n";
  return 0;
}

int cmd_build(const RunConfig& cfg) {
  cfg.validate(false);
  const ScatteringSolution sol = solve_neumann(cfg.potential, cfg.scatter_n, cfg.ell);
  const auto modes = mode_set(cfg.max_norm2);
  const EtaCoefficients eta = eta_coefficients(sol, modes, cfg.alpha, cfg.beta);
  const int n = cfg.n_grid.front();
  HamiltonianBundle bundle =
      build_bundle(modes, n, cfg.potential, &eta, sol.a0, cfg.ell, cfg.dim_budget);

  nlohmann::json j = manifest_header(cfg);
  j["N"] = n;
  j["a0"] = sol.a0;
  j["dims"] = {{"full", bundle.full->dim()}, {"excitation", bundle.exc->dim()}};
  j["nnz"] = {{"H", bundle.h_n.matrix.nonZeros()},
              {"L0", bundle.l.l0.matrix.nonZeros()},
              {"L2", bundle.l.l2.matrix.nonZeros()},
              {"L3", bundle.l.l3.matrix.nonZeros()},
              {"L4", bundle.l.l4.matrix.nonZeros()},
              {"K", bundle.kinetic.matrix.nonZeros()},
              {"VN", bundle.v_n.matrix.nonZeros()},
              {"Geff", bundle.eff->g_eff.matrix.nonZeros()}};
  j["dropped_terms"] = {{"H", bundle.hn_stats.terms_dropped},
                        {"L4", bundle.l_stats.terms_dropped}};
  j["warnings"] = bundle.warnings;
  write_text_file(out_path(cfg, "bundle.json"), j.dump(2) + "\n");

  auto piece_by_name = [&](const std::string& name) -> const SparseOperator* {
    if (name == "H") return &bundle.h_n;
    if (name == "L0") return &bundle.l.l0;
    if (name == "L2") return &bundle.l.l2;
    if (name == "L3") return &bundle.l.l3;
    if (name == "L4") return &bundle.l.l4;
    if (name == "K") return &bundle.kinetic;
    if (name == "VN") return &bundle.v_n;
    if (name == "Geff") return &bundle.eff->g_eff;
    return nullptr;
  };
  for (const auto& name : cfg.export_pieces) {
    const SparseOperator* op = piece_by_name(name);
    if (op == nullptr) throw ConfigError("export.pieces: unknown piece " + name);
    write_text_file(out_path(cfg, name + ".coo"), render_coo(op->matrix));
  }
  if (!cfg.crossdiff_piece.empty()) {
    const SparseOperator* op = piece_by_name(cfg.crossdiff_piece);
    if (op == nullptr) throw ConfigError("crossdiff.piece: unknown piece");
    std::ifstream in(cfg.crossdiff_file);
    if (!in) throw ConfigError("crossdiff.file: cannot open " + cfg.crossdiff_file);
    std::stringstream ss;
    ss << in.rdbuf();
    const SparseMatrix ref =
        parse_coo(ss.str(), op->matrix.rows(), op->matrix.cols());
    const double diff = max_abs_diff(op->matrix, ref);
    std::cout << "crossdiff max-entry difference = " << format_sig17(diff) << "\n";
    if (diff > 1e-12) return 1;
  }
  return 0;
}

int cmd_diagonalize(const RunConfig& cfg) {
  cfg.validate(false);
  const double a0 = zero_energy_scattering(cfg.potential);
  std::vector<std::vector<std::string>> rows;
  nlohmann::json points = nlohmann::json::array();
  for (int n : cfg.n_grid) {
    auto full = build_basis(mode_set_with_zero(cfg.max_norm2), n,
                            Sector::particle_exactly_n, cfg.dim_budget);
    VhatProvider vhat(cfg.potential, n);
    const SparseOperator h = build_hn(full, vhat);
    const SpectralResult gs =
        ground_state(h, cfg.sweep_k_eigs, cfg.solver_tol, cfg.max_iter, cfg.seed);
    for (std::size_t i = 0; i < gs.energies.size(); ++i)
      rows.push_back({std::to_string(n), std::to_string(i),
                      format_sig17(gs.energies[i]), format_sig17(gs.residuals[i]),
                      format_sig17(gs.n_plus_per_state[i])});
    nlohmann::json p;
    p["N"] = n;
    p["dim"] = full->dim();
    p["E0"] = gs.energies[0];
    p["E0_minus_gp"] = gs.energies[0] - 4.0 * M_PI * a0 * n;
    p["degeneracy_warning"] = gs.degeneracy_warning;
    points.push_back(p);
  }
  write_text_file(out_path(cfg, "diagonalize.csv"),
                  render_csv({"N", "level", "E", "residual", "n_plus"}, rows));
  nlohmann::json j = manifest_header(cfg);
  j["a0"] = a0;
  j["points"] = points;
  write_text_file(out_path(cfg, "diagonalize.json"), j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  cfg.validate(suite == "bounds" || suite == "all");
  SuiteResult result;
  if (suite == "algebra")
    result = run_algebra_suite(cfg);
  else if (suite == "renorm")
    result = run_renorm_suite(cfg);
  else if (suite == "bounds")
    result = run_bounds_suite(cfg);
  else if (suite == "all")
    result = run_all_suites(cfg);
  else
    throw ConfigError("verify: unknown suite " + suite);

  write_text_file(out_path(cfg, "verify_" + suite + ".json"), result.to_json() + "\n");
  for (const auto& r : result.reports)
    std::cout << r.name << ": " << r.verdict << "\n";
  std::cout << (result.pass ? "PASS" : "FAIL") << "\n";
  return result.pass ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg) {
  cfg.validate(false);
  SweepConfig sc;
  sc.potential = cfg.potential;
  sc.n_values = cfg.n_grid;
  sc.max_norm2 = cfg.max_norm2;
  sc.ell = cfg.ell;
  sc.tol = cfg.solver_tol;
  sc.max_iter = cfg.max_iter;
  sc.seed = cfg.seed;
  sc.jobs = cfg.jobs;
  sc.dim_budget = cfg.dim_budget;
  const auto rows = energy_sweep(sc);

  std::vector<std::vector<std::string>> csv;
  nlohmann::json points = nlohmann::json::array();
  for (const auto& r : rows) {
    if (!r.failed)
      csv.push_back({std::to_string(r.n_particles), std::to_string(r.dim),
                     format_sig17(r.energy), format_sig17(r.energy_minus_gp),
                     format_sig17(r.n_plus), format_sig17(r.depletion_times_n)});
    nlohmann::json p;
    p["N"] = r.n_particles;
    p["status"] = r.failed ? ("failed: " + r.error) : "ok";
    p["runtime_seconds"] = r.runtime_seconds;
    points.push_back(p);
  }
  write_text_file(
      out_path(cfg, "sweep.csv"),
      render_csv({"N", "dim", "E", "E_minus_4pia0N", "n_plus", "depletion_times_N"},
                 csv));

  // excess-energy windows on the largest N
  const double a0 = zero_energy_scattering(cfg.potential);
  const int n = cfg.n_grid.back();
  auto full = build_basis(mode_set_with_zero(cfg.max_norm2), n,
                          Sector::particle_exactly_n, cfg.dim_budget);
  VhatProvider vhat(cfg.potential, n);
  const SparseOperator h = build_hn(full, vhat);
  std::vector<std::vector<std::string>> excess_csv;
  try {
    const auto excess = depletion_vs_excess(h, a0, n, cfg.sweep_k_grid,
                                            cfg.sweep_k_eigs, cfg.solver_tol,
                                            cfg.max_iter, cfg.seed);
    for (const auto& r : excess)
      excess_csv.push_back({format_sig17(r.excess), std::to_string(r.states_in_window),
                            format_sig17(r.max_ratio)});
  } catch (const EmptyWindow&) {
    // recorded in the manifest below
  }
  write_text_file(out_path(cfg, "excess.csv"),
                  render_csv({"K", "states_in_window", "max_ratio"}, excess_csv));

  nlohmann::json j = manifest_header(cfg);
  j["points"] = points;
  j["excess_rows"] = excess_csv.size();
  write_text_file(out_path(cfg, "sweep.json"), j.dump(2) + "\n");

  bool any_failed = false;
  for (const auto& r : rows) any_failed = any_failed || r.failed;
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-cutoff Bose gas toolkit"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "configuration file")->required();
  app.add_option("--jobs", g.jobs, "worker pool size for sweeps");
  app.add_option("--out", g.out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", g.seed, "override the RNG seed");

  auto* scatter = app.add_subcommand("scatter", "radial scattering pipeline");
  auto* build = app.add_subcommand("build", "assemble operator bundle");
  auto* diagonalize = app.add_subcommand("diagonalize", "ground states of H_N");
  auto* verify = app.add_subcommand("verify", "property suites");
  std::string suite = "all";
  verify->add_option("--suite", suite, "algebra|renorm|bounds|all");
  auto* sweep = app.add_subcommand("sweep", "energy/depletion sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  g.seed_set = seed_opt->count() > 0;

  try {
    const RunConfig cfg = load_config(g);
    if (scatter->parsed()) return cmd_scatter(cfg);
    if (build->parsed()) return cmd_build(cfg);
    if (diagonalize->parsed()) return cmd_diagonalize(cfg);
    if (verify->parsed()) return cmd_verify(cfg, suite);
    if (sweep->parsed()) return cmd_sweep(cfg);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionBudgetExceeded& e) {
    std::cerr << "resource budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
