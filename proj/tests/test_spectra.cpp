#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpbose/errors.hpp"
#include "gpbose/spectra.hpp"
#include "gpbose/verify_suites.hpp"

using namespace gpbose;

namespace {
const Potential kWell = Potential::square_well(2.0, 1.0);
}

TEST_CASE("kinetic-only ground state is the vacuum") {
  auto exc = build_basis(mode_set(1), 4, Sector::excitation_leq_n);
  VhatProvider vhat(Potential::zero(), 4);
  const KineticPotential kv = build_k_vn(exc, vhat);
  const SpectralResult gs = ground_state(kv.kinetic, 1, 1e-10, 400, 5);
  CHECK(gs.energies[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gs.n_plus_expectation <= 1e-10);
}

TEST_CASE("free gas condenses completely") {
  auto full = build_basis(mode_set_with_zero(1), 4, Sector::particle_exactly_n);
  VhatProvider vhat(Potential::zero(), 4);
  const SparseOperator h = build_hn(full, vhat);
  const SpectralResult gs = ground_state(h, 1, 1e-10, 400, 5);
  CHECK(std::abs(gs.energies[0]) <= 1e-10);
  CHECK(gs.depletion <= 1e-12);
}

TEST_CASE("lanczos agrees with dense diagonalization on small problems") {
  auto full = build_basis(mode_set_with_zero(1), 4, Sector::particle_exactly_n);
  VhatProvider vhat(kWell, 4);
  const SparseOperator h = build_hn(full, vhat);
  REQUIRE(full->dim() <= 500);
  const auto dense = dense_spectrum(to_dense(h.matrix));
  const SpectralResult gs = ground_state(h, 4, 1e-10, 400, 5);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(gs.energies[i] - dense[static_cast<std::size_t>(i)]) <= 1e-10);
    CHECK(gs.residuals[i] <= 1e-10 * std::max(1.0, std::abs(gs.energies[i])));
  }
}

TEST_CASE("lanczos resolves degenerate multiplets") {
  auto exc = build_basis(mode_set(1), 2, Sector::excitation_leq_n);
  VhatProvider vhat(Potential::zero(), 2);
  const KineticPotential kv = build_k_vn(exc, vhat);
  // spectrum of K: 0, then 4pi^2 with multiplicity 6
  const SpectralResult gs = ground_state(kv.kinetic, 4, 1e-10, 400, 5);
  CHECK(gs.energies[0] == doctest::Approx(0.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i)
    CHECK(gs.energies[i] == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-10));
  CHECK(gs.degeneracy_warning);
}

TEST_CASE("reduced density of the pure condensate is a rank-one projector") {
  auto full = build_basis(mode_set_with_zero(1), 3, Sector::particle_exactly_n);
  StateVector psi;
  psi.basis = full;
  psi.amplitudes = Vector::Zero(static_cast<long>(full->dim()));
  std::vector<std::uint8_t> occ(full->num_modes(), 0);
  occ[static_cast<std::size_t>(full->zero_mode_position())] = 3;
  psi.amplitudes(full->index_of(occ)) = 1.0;
  const DensityMatrix gamma = reduced_density(psi);
  double trace = 0.0;
  for (long i = 0; i < gamma.gamma.rows(); ++i) trace += gamma.gamma(i, i).real();
  CHECK(trace == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < gamma.modes.size(); ++i) {
    const double expect = gamma.modes[i].is_zero() ? 1.0 : 0.0;
    CHECK(gamma.gamma(static_cast<long>(i), static_cast<long>(i)).real() ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("density matrix is PSD with unit trace for interacting ground states") {
  auto full = build_basis(mode_set_with_zero(1), 4, Sector::particle_exactly_n);
  VhatProvider vhat(kWell, 4);
  const SparseOperator h = build_hn(full, vhat);
  const SpectralResult gs = ground_state(h, 1, 1e-10, 400, 5);
  const DensityMatrix gamma = reduced_density(gs.states[0]);
  double trace = 0.0;
  for (long i = 0; i < gamma.gamma.rows(); ++i) trace += gamma.gamma(i, i).real();
  CHECK(trace == doctest::Approx(1.0).epsilon(1e-10));
  const auto spec = dense_spectrum(gamma.gamma);
  CHECK(spec.front() >= -1e-12);
  // depletion * N = <N_+> identity
  long zrow = -1;
  for (std::size_t i = 0; i < gamma.modes.size(); ++i)
    if (gamma.modes[i].is_zero()) zrow = static_cast<long>(i);
  REQUIRE(zrow >= 0);
  const double depletion = 1.0 - gamma.gamma(zrow, zrow).real();
  CHECK(depletion * 4.0 == doctest::Approx(gs.n_plus_expectation).epsilon(1e-9));
}

TEST_CASE("energy sweep emits one row per grid point and survives failures") {
  SweepConfig sc;
  sc.potential = kWell;
  sc.n_values = {2, 3, 4};
  sc.max_norm2 = 1;
  const auto rows = energy_sweep(sc);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(!r.failed);
    CHECK(r.dim > 0);
    CHECK(std::isfinite(r.energy));
    CHECK(r.depletion_times_n == doctest::Approx(r.n_plus).epsilon(1e-9));
  }
  // variational in N is not expected; dims must grow monotonically
  CHECK(rows[0].dim < rows[1].dim);
  CHECK(rows[1].dim < rows[2].dim);

  // a failing point is recorded, not fatal
  SweepConfig bad = sc;
  bad.n_values = {3};
  bad.dim_budget = 2;
  const auto bad_rows = energy_sweep(bad);
  REQUIRE(bad_rows.size() == 1);
  CHECK(bad_rows[0].failed);
  CHECK(!bad_rows[0].error.empty());
}

TEST_CASE("zero potential sweep row is exactly condensed") {
  SweepConfig sc;
  sc.potential = Potential::zero();
  sc.n_values = {2};
  sc.max_norm2 = 1;
  const auto rows = energy_sweep(sc);
  CHECK(std::abs(rows[0].energy) <= 1e-10);
  CHECK(std::abs(rows[0].n_plus) <= 1e-9);
}

TEST_CASE("excess-energy windows report bounded depletion ratios") {
  auto full = build_basis(mode_set_with_zero(1), 4, Sector::particle_exactly_n);
  VhatProvider vhat(kWell, 4);
  const SparseOperator h = build_hn(full, vhat);
  const double a0 = zero_energy_scattering(kWell);
  const SpectralResult gs = ground_state(h, 1, 1e-10, 400, 5);
  const double k0 = std::max(0.0, gs.energies[0] - 4.0 * M_PI * a0 * 4) + 0.5;
  const auto rows = depletion_vs_excess(h, a0, 4, {k0, k0 + 2.0}, 4, 1e-10, 400, 5);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.states_in_window >= 1);
    CHECK(std::isfinite(r.max_ratio));
  }
  CHECK_THROWS_AS(depletion_vs_excess(h, a0, 4, {-1e6}, 2, 1e-10, 400, 5), EmptyWindow);
}
