#pragma once

#include "gpbose/hamiltonian.hpp"
#include "gpbose/lanczos.hpp"

namespace gpbose {

//! Low-lying eigenpairs with the condensation observables attached.
struct SpectralResult {
  std::vector<double> energies;            // ascending
  std::vector<StateVector> states;
  std::vector<double> residuals;
  std::vector<double> n_plus_per_state;    // <N_+> per eigenstate
  double n_plus_expectation = 0.0;         // ground state <N_+>
  double condensate_fraction = 1.0;        // (N - <N_+>)/N for the ground state
  double depletion = 0.0;                  // 1 - condensate_fraction
  bool degeneracy_warning = false;
};

SpectralResult ground_state(const SparseOperator& op, int k, double tol, int max_iter,
                            std::uint64_t seed);

//! Reduced one-particle density matrix, normalized to unit trace.
struct DensityMatrix {
  std::vector<Mode> modes;   // row/column labels (includes the zero mode)
  DenseMatrix gamma;
};

// gamma(p, q) = <a*_q a_p>/N of a normalized N-particle state.
DensityMatrix reduced_density(const StateVector& state);

struct SweepRow {
  int n_particles = 0;
  std::size_t dim = 0;
  double energy = 0.0;
  double energy_minus_gp = 0.0;  // E_N - 4 pi a0 N
  double n_plus = 0.0;
  double depletion_times_n = 0.0;
  double runtime_seconds = 0.0;
  bool failed = false;
  std::string error;
};

struct SweepConfig {
  Potential potential;
  std::vector<int> n_values;
  long max_norm2 = 1;
  double ell = 0.25;
  double tol = 1e-10;
  int max_iter = 400;
  std::uint64_t seed = 1234;
  int jobs = 1;
  std::size_t dim_budget = 5'000'000;
};

// Ground-state energy and depletion across the N-grid; per-point failures are
// recorded in the row and the sweep continues.
std::vector<SweepRow> energy_sweep(const SweepConfig& config);

struct ExcessRow {
  double excess = 0.0;       // window K
  int states_in_window = 0;
  double max_ratio = 0.0;    // max <N_+>/(K+1) over the window
};

// For each K in the grid, the worst <N_+>/(K+1) among eigenstates with
// E <= 4 pi a0 N + K; throws EmptyWindow when no eigenstate qualifies.
std::vector<ExcessRow> depletion_vs_excess(const SparseOperator& op, double a0,
                                           int n_particles,
                                           const std::vector<double>& k_grid,
                                           int k_eigs, double tol, int max_iter,
                                           std::uint64_t seed);

}  // namespace gpbose
