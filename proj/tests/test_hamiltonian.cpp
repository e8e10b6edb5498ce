#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>

#include "gpbose/hamiltonian.hpp"
#include "gpbose/lanczos.hpp"
#include "gpbose/verify_suites.hpp"

using namespace gpbose;

namespace {
const Potential kWell = Potential::square_well(2.0, 1.0);

SparseOperator u_conj(const SparseOperator& u, const SparseOperator& op) {
  return multiply(multiply(u, op), u.adjoint());
}

// Independent N = 2 assembly: symmetric two-particle momentum states
// |p q> with p <= q, matrix elements from a naive double loop.
Eigen::MatrixXd two_body_oracle(const std::vector<Mode>& modes_with_zero,
                                const VhatProvider& vhat) {
  std::vector<std::pair<Mode, Mode>> pairs;
  for (std::size_t i = 0; i < modes_with_zero.size(); ++i)
    for (std::size_t j = i; j < modes_with_zero.size(); ++j)
      pairs.emplace_back(modes_with_zero[i], modes_with_zero[j]);
  const std::size_t d = pairs.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  const double inv2n = 0.5 / 2.0;
  for (std::size_t a = 0; a < d; ++a) {
    const auto& [p1, p2] = pairs[a];
    h(a, a) += p1.p2() + p2.p2();
    for (std::size_t b = 0; b < d; ++b) {
      const auto& [q1, q2] = pairs[b];
      if (!((p1 + p2) == (q1 + q2))) continue;
      // <p1 p2| V |q1 q2> with both pairings; symmetric normalization
      double amp = vhat(p1 - q1) + vhat(p1 - q2);
      const double norm_a = (p1 == p2) ? std::sqrt(2.0) : 1.0;
      const double norm_b = (q1 == q2) ? std::sqrt(2.0) : 1.0;
      h(a, b) += inv2n * 2.0 * amp / (norm_a * norm_b);
    }
  }
  return h;
}

}  // namespace

TEST_CASE("free Hamiltonian is diagonal with zero ground energy") {
  auto full = build_basis(mode_set_with_zero(1), 3, Sector::particle_exactly_n);
  VhatProvider vhat(Potential::zero(), 3);
  const SparseOperator h = build_hn(full, vhat);
  for (int row = 0; row < h.matrix.outerSize(); ++row)
    for (SparseMatrix::InnerIterator it(h.matrix, row); it; ++it)
      CHECK(it.row() == it.col());
  CHECK(lambda_min(h) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single particle reproduces the lattice dispersion") {
  auto full = build_basis(mode_set_with_zero(2), 1, Sector::particle_exactly_n);
  VhatProvider vhat(Potential::zero(), 1);
  const SparseOperator h = build_hn(full, vhat);
  std::multiset<double> expect, got;
  for (const auto& k : full->modes()) expect.insert(k.p2());
  for (std::size_t i = 0; i < full->dim(); ++i)
    got.insert(h.matrix.coeff(static_cast<long>(i), static_cast<long>(i)).real());
  auto e = expect.begin();
  for (auto g = got.begin(); g != got.end(); ++g, ++e)
    CHECK(*g == doctest::Approx(*e).epsilon(1e-14));
}

TEST_CASE("two-particle ground state matches the naive double-loop oracle") {
  const auto modes0 = mode_set_with_zero(2);
  auto full = build_basis(modes0, 2, Sector::particle_exactly_n);
  VhatProvider vhat(kWell, 2);
  const SparseOperator h = build_hn(full, vhat);
  const Eigen::MatrixXd oracle = two_body_oracle(modes0, vhat);
  REQUIRE(static_cast<std::size_t>(oracle.rows()) == full->dim());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle, Eigen::EigenvaluesOnly);
  const double e0 = lambda_min(h);
  CHECK(e0 == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
}

TEST_CASE("vacuum expectations of the excitation pieces") {
  const int n = 4;
  auto exc = build_basis(mode_set(1), n, Sector::excitation_leq_n);
  VhatProvider vhat(kWell, n);
  const LPieces l = build_l_pieces(exc, vhat);
  const long vac = exc->index_of(std::vector<std::uint8_t>(exc->num_modes(), 0));
  CHECK(l.l0.matrix.coeff(vac, vac).real() ==
        doctest::Approx((n - 1.0) * vhat.at_zero() / 2.0).epsilon(1e-13));
  CHECK(std::abs(l.l3.matrix.coeff(vac, vac)) == 0.0);
  CHECK(std::abs(l.l4.matrix.coeff(vac, vac)) == 0.0);
}

TEST_CASE("excitation map identity at N = 4 with 8-mode interactions") {
  // modes |m|^2 <= 1 plus one opposite pair from the second shell
  std::vector<Mode> modes = mode_set(1);
  modes.push_back(Mode{{1, 1, 0}});
  modes.push_back(Mode{{-1, -1, 0}});
  std::sort(modes.begin(), modes.end());
  std::vector<Mode> modes0 = modes;
  modes0.push_back(Mode{});
  std::sort(modes0.begin(), modes0.end());

  const int n = 4;
  auto full = build_basis(modes0, n, Sector::particle_exactly_n);
  auto exc = build_basis(modes, n, Sector::excitation_leq_n);
  VhatProvider vhat(kWell, n);
  const SparseOperator h = build_hn(full, vhat);
  const LPieces l = build_l_pieces(exc, vhat);
  const SparseOperator u = u_map(full, exc);
  CHECK(max_abs_diff(l_total(l).matrix, u_conj(u, h).matrix) <= 1e-10);
}

TEST_CASE("kinetic/potential split") {
  const int n = 4;
  auto exc = build_basis(mode_set(1), n, Sector::excitation_leq_n);
  VhatProvider vhat(kWell, n);
  const KineticPotential kv = build_k_vn(exc, vhat);

  const long vac = exc->index_of(std::vector<std::uint8_t>(exc->num_modes(), 0));
  CHECK(std::abs(kv.kinetic.matrix.coeff(vac, vac)) == 0.0);

  // positive semidefinite quartic part (dense check)
  const auto spec = dense_spectrum(to_dense(kv.potential.matrix));
  CHECK(spec.front() >= -1e-10);

  // kinetic gap equals the first lattice shell
  double gap = 1e300;
  for (std::size_t i = 0; i < exc->dim(); ++i) {
    const double v = kv.kinetic.matrix.coeff(static_cast<long>(i), static_cast<long>(i)).real();
    if (v > 0.0) gap = std::min(gap, v);
  }
  CHECK(gap == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("effective pieces assemble exactly and carry the right vacuum") {
  const int n = 4;
  const ScatteringSolution sol = solve_neumann(kWell, 20, 0.25);
  const auto modes = mode_set(1);
  const EtaCoefficients eta = eta_coefficients(sol, modes, 3.5, 2.0);
  auto exc = build_basis(modes, n, Sector::excitation_leq_n);
  VhatProvider vhat(kWell, n);
  const EffectivePieces eff = build_geff(exc, vhat, sol.a0, eta, 0.25);

  // definitional sum
  SparseMatrix sum = eff.d_n.matrix + eff.kinetic.matrix + eff.q_nl.matrix +
                     eff.c_n.matrix + eff.v_n.matrix;
  CHECK(max_abs_diff(sum, eff.g_eff.matrix) <= 1e-12);

  // vacuum expectation 4 pi a0 N
  const long vac = exc->index_of(std::vector<std::uint8_t>(exc->num_modes(), 0));
  CHECK(eff.g_eff.matrix.coeff(vac, vac).real() ==
        doctest::Approx(4.0 * M_PI * sol.a0 * n).epsilon(1e-12));

  // D_N vanishes on fully-excited states
  for (std::size_t i = 0; i < exc->dim(); ++i)
    if (exc->excitation_count(i) == n)
      CHECK(std::abs(eff.d_n.matrix.coeff(static_cast<long>(i), static_cast<long>(i))) <=
            1e-13);

  // desk-scale cutoffs exhaust the lattice: the warning must be recorded
  bool warned = false;
  for (const auto& w : eff.warnings) warned = warned || w.find("EmptyCutoffSet") == 0;
  CHECK(warned);
}

TEST_CASE("every bundle member is Hermitian and momentum conserving") {
  const int n = 3;
  const ScatteringSolution sol = solve_neumann(kWell, 20, 0.25);
  const auto modes = mode_set(1);
  const EtaCoefficients eta = eta_coefficients(sol, modes, 3.5, 2.0);
  HamiltonianBundle b = build_bundle(modes, n, kWell, &eta, sol.a0, 0.25);
  for (const SparseOperator* op :
       {&b.h_n, &b.l.l0, &b.l.l2, &b.l.l3, &b.l.l4, &b.kinetic, &b.v_n,
        &b.eff->g_eff}) {
    CHECK_NOTHROW(op->verify_momentum());
    const SparseMatrix adj = op->matrix.adjoint();
    CHECK(max_abs_diff(op->matrix, adj) <=
          1e-12 * std::max(1.0, max_abs_entry(op->matrix)));
  }
  // N_+ commutes with the momentum-conserving pieces that fix the count
  const SparseOperator np = n_plus_operator(b.exc);
  CHECK(max_abs_entry(commutator(np, b.kinetic).matrix) <= 1e-12);
  CHECK(max_abs_entry(commutator(np, b.v_n).matrix) <= 1e-12);
  CHECK(max_abs_entry(commutator(np, b.l.l0).matrix) <= 1e-12);
}

TEST_CASE("enlarging the mode set can only lower the ground energy") {
  const int n = 3;
  double prev = std::numeric_limits<double>::infinity();
  for (long c : {1L, 2L}) {
    auto full = build_basis(mode_set_with_zero(c), n, Sector::particle_exactly_n);
    VhatProvider vhat(kWell, n);
    const SparseOperator h = build_hn(full, vhat);
    const double e0 = lambda_min(h);
    CHECK(e0 <= prev + 1e-10);
    prev = e0;
  }
}

TEST_CASE("mode-closure drops are counted") {
  const int n = 3;
  auto full = build_basis(mode_set_with_zero(1), n, Sector::particle_exactly_n);
  VhatProvider vhat(kWell, n);
  QuarticStats stats;
  build_hn(full, vhat, &stats);
  CHECK(stats.terms_kept > 0);
  CHECK(stats.terms_dropped > 0);  // boundary of the 7-mode set truncates r-sums
}
