#include "gpbose/spectra.hpp"

#include <chrono>
#include <future>

#include "gpbose/errors.hpp"

namespace gpbose {

SpectralResult ground_state(const SparseOperator& op, int k, double tol, int max_iter,
                            std::uint64_t seed) {
  if (!op.hermitian) throw Error("ground_state: operator must be Hermitian");
  EigOptions eo;
  eo.k = k;
  eo.tol = tol;
  eo.max_iter = max_iter;
  eo.seed = seed;
  const EigResult eig = eigs_smallest(op, eo);

  SpectralResult out;
  out.energies = eig.values;
  out.residuals = eig.residuals;
  out.degeneracy_warning = eig.degeneracy_warning;
  const SparseOperator np = n_plus_operator(op.domain);
  for (int i = 0; i < k; ++i) {
    StateVector s;
    s.basis = op.domain;
    s.amplitudes = eig.vectors[static_cast<std::size_t>(i)];
    const double nplus = s.amplitudes.dot(np.matrix * s.amplitudes).real();
    out.n_plus_per_state.push_back(nplus);
    out.states.push_back(std::move(s));
  }
  out.n_plus_expectation = out.n_plus_per_state.front();
  const double n = op.domain->n_max();
  out.condensate_fraction = (n - out.n_plus_expectation) / n;
  out.depletion = 1.0 - out.condensate_fraction;
  return out;
}

DensityMatrix reduced_density(const StateVector& state) {
  const BasisPtr& basis = state.basis;
  if (basis->sector() != Sector::particle_exactly_n)
    throw WrongSector("reduced_density: particle sector required");
  const auto& modes = basis->modes();
  const std::size_t m = modes.size();
  // gamma(p, q) = <psi| a*_q a_p |psi> / N; each pair is one product term so
  // that the intermediate (N-1)-particle state never needs representing
  DenseMatrix gamma(static_cast<long>(m), static_cast<long>(m));
  const double n = basis->n_max();
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      const SparseOperator hop = pair_hop(basis, modes[q], modes[p]);
      gamma(static_cast<long>(p), static_cast<long>(q)) =
          state.amplitudes.dot(hop.matrix * state.amplitudes) / n;
    }
  DensityMatrix out;
  out.modes = modes;
  out.gamma = std::move(gamma);
  return out;
}

namespace {

SweepRow sweep_point(const SweepConfig& config, int n) {
  SweepRow row;
  row.n_particles = n;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const double a0 = zero_energy_scattering(config.potential);
    auto modes = mode_set(config.max_norm2);
    auto with_zero = mode_set_with_zero(config.max_norm2);
    auto full = build_basis(with_zero, n, Sector::particle_exactly_n, config.dim_budget);
    VhatProvider vhat(config.potential, n);
    const SparseOperator h = build_hn(full, vhat);
    row.dim = full->dim();
    const SpectralResult gs =
        ground_state(h, 1, config.tol, config.max_iter, config.seed);
    row.energy = gs.energies[0];
    row.energy_minus_gp = gs.energies[0] - 4.0 * M_PI * a0 * n;
    row.n_plus = gs.n_plus_expectation;
    row.depletion_times_n = gs.depletion * n;
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
  }
  row.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

std::vector<SweepRow> energy_sweep(const SweepConfig& config) {
  std::vector<SweepRow> rows(config.n_values.size());
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < config.n_values.size(); ++i)
      rows[i] = sweep_point(config, config.n_values[i]);
    return rows;
  }
  std::size_t next = 0;
  while (next < config.n_values.size()) {
    const std::size_t batch = std::min<std::size_t>(jobs, config.n_values.size() - next);
    std::vector<std::future<SweepRow>> futs;
    for (std::size_t b = 0; b < batch; ++b)
      futs.push_back(std::async(std::launch::async, sweep_point, std::cref(config),
                                config.n_values[next + b]));
    for (std::size_t b = 0; b < batch; ++b) rows[next + b] = futs[b].get();
    next += batch;
  }
  return rows;
}

std::vector<ExcessRow> depletion_vs_excess(const SparseOperator& op, double a0,
                                           int n_particles,
                                           const std::vector<double>& k_grid,
                                           int k_eigs, double tol, int max_iter,
                                           std::uint64_t seed) {
  const SpectralResult sr = ground_state(op, k_eigs, tol, max_iter, seed);
  const double gp = 4.0 * M_PI * a0 * n_particles;
  std::vector<ExcessRow> rows;
  for (double k : k_grid) {
    ExcessRow row;
    row.excess = k;
    for (int i = 0; i < k_eigs; ++i) {
      if (sr.energies[static_cast<std::size_t>(i)] <= gp + k) {
        ++row.states_in_window;
        row.max_ratio = std::max(
            row.max_ratio, sr.n_plus_per_state[static_cast<std::size_t>(i)] / (k + 1.0));
      }
    }
    if (row.states_in_window == 0)
      throw EmptyWindow("depletion_vs_excess: no eigenstate below 4 pi a0 N + K");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gpbose
