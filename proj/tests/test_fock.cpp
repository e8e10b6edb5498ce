#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpbose/errors.hpp"
#include "gpbose/ladders.hpp"
#include "gpbose/lanczos.hpp"

using namespace gpbose;

namespace {
const Mode kP{{0, 0, 1}};
const Mode kMp{{0, 0, -1}};
}  // namespace

TEST_CASE("two-mode enumeration is complete and deterministic") {
  auto basis = build_basis({kP, kMp}, 2, Sector::excitation_leq_n);
  CHECK(basis->dim() == 6);
  auto again = build_basis({kP, kMp}, 2, Sector::excitation_leq_n);
  for (std::size_t i = 0; i < basis->dim(); ++i)
    CHECK(basis->occupations(i) == again->occupations(i));
  // every (n1, n2) with n1 + n2 <= 2 appears exactly once
  int seen = 0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) {
      std::vector<std::uint8_t> occ{static_cast<std::uint8_t>(a),
                                    static_cast<std::uint8_t>(b)};
      CHECK(basis->index_of(occ) >= 0);
      ++seen;
    }
  CHECK(seen == 6);
}

TEST_CASE("vacuum-only basis at N = 0") {
  auto basis = build_basis(mode_set(1), 0, Sector::excitation_leq_n);
  CHECK(basis->dim() == 1);
}

TEST_CASE("particle sector dimension equals the excitation sector") {
  auto full = build_basis(mode_set_with_zero(1), 3, Sector::particle_exactly_n);
  auto exc = build_basis(mode_set(1), 3, Sector::excitation_leq_n);
  CHECK(full->dim() == exc->dim());
  CHECK(exc->dim() == 84);  // C(6+3, 3)
}

TEST_CASE("dimension budget is enforced") {
  CHECK_THROWS_AS(build_basis(mode_set(2), 8, Sector::excitation_leq_n, 1000),
                  DimensionBudgetExceeded);
}

TEST_CASE("ladder matrix elements and the truncated commutator") {
  auto basis = build_basis(mode_set(1), 3, Sector::excitation_leq_n);
  const SparseOperator a = ladder(basis, kP, LadderKind::a);
  const SparseOperator adag = ladder(basis, kP, LadderKind::a_dag);

  // a_p annihilates the vacuum
  StateVector vac;
  vac.basis = basis;
  vac.amplitudes = Vector::Zero(static_cast<long>(basis->dim()));
  vac.amplitudes(basis->index_of(std::vector<std::uint8_t>(6, 0))) = 1.0;
  CHECK(apply(a, vac).norm() == 0.0);

  // a*_p a_p is diagonal with the occupations
  const SparseOperator num = multiply(adag, a);
  for (std::size_t i = 0; i < basis->dim(); ++i) {
    const int pos = basis->mode_position(kP);
    CHECK(num.matrix.coeff(static_cast<long>(i), static_cast<long>(i)).real() ==
          doctest::Approx(basis->occupations(i)[pos]));
  }

  // [a_p, a*_q] = delta_pq on states kept away from the truncation shell
  const SparseOperator proj = diagonal_op(basis, [&](std::size_t i) {
    return basis->excitation_count(i) < basis->n_max() ? 1.0 : 0.0;
  });
  for (const auto& q : basis->modes()) {
    const SparseOperator comm = commutator(a, ladder(basis, q, LadderKind::a_dag));
    const SparseMatrix lhs = (multiply(comm, proj)).matrix;
    SparseMatrix rhs = (q == kP) ? proj.matrix : SparseMatrix(proj.matrix.rows(),
                                                              proj.matrix.cols());
    CHECK(max_abs_diff(lhs, rhs) <= 1e-13);
  }
}

TEST_CASE("generalized ladders obey the deformed commutators exactly") {
  auto basis = build_basis(mode_set(1), 3, Sector::excitation_leq_n);
  const double n = 3.0;
  for (const auto& p : basis->modes()) {
    const SparseOperator bp = b_ladder(basis, p, LadderKind::b);
    for (const auto& q : basis->modes()) {
      const SparseOperator bqd = b_ladder(basis, q, LadderKind::b_dag);
      const SparseOperator lhs = commutator(bp, bqd);
      const SparseOperator aqap =
          multiply(ladder(basis, q, LadderKind::a_dag), ladder(basis, p, LadderKind::a));
      SparseOperator diag = diagonal_op(basis, [&](std::size_t i) {
        return (p == q) ? 1.0 - basis->excitation_count(i) / n : 0.0;
      });
      const SparseMatrix rhs = diag.matrix - aqap.matrix / n;
      CHECK(max_abs_diff(lhs.matrix, rhs) <= 1e-12);
    }
    // [b_p, N_+] = b_p
    const SparseOperator np = n_plus_operator(basis);
    CHECK(max_abs_diff(commutator(bp, np).matrix, bp.matrix) <= 1e-12);
    // norm bound sqrt(N + 1)
    const double norm2 = lambda_max(multiply(bp.adjoint(), bp));
    CHECK(std::sqrt(norm2) <= std::sqrt(n + 1.0) + 1e-10);
  }
}

TEST_CASE("b ladders require the excitation sector") {
  auto full = build_basis(mode_set_with_zero(1), 3, Sector::particle_exactly_n);
  CHECK_THROWS_AS(b_ladder(full, kP, LadderKind::b), WrongSector);
  auto exc = build_basis(mode_set(1), 3, Sector::excitation_leq_n);
  CHECK_THROWS_AS(ladder(exc, Mode{{5, 5, 5}}, LadderKind::a), UnknownMode);
}

TEST_CASE("number operator over subsets") {
  auto basis = build_basis(mode_set(1), 4, Sector::excitation_leq_n);
  const SparseOperator all = number_operator(basis, basis->modes());
  // eigenvalues 0..N
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < basis->dim(); ++i) {
    const double v = all.matrix.coeff(static_cast<long>(i), static_cast<long>(i)).real();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == 0.0);
  CHECK(hi == 4.0);
}

TEST_CASE("condensate map: permutation, unitary, and the four rules") {
  auto full = build_basis(mode_set_with_zero(1), 3, Sector::particle_exactly_n);
  auto exc = build_basis(mode_set(1), 3, Sector::excitation_leq_n);
  const SparseOperator u = u_map(full, exc);
  const Mode zero{};

  CHECK(max_abs_diff(multiply(u, u.adjoint()).matrix, identity_op(exc).matrix) == 0.0);
  CHECK(max_abs_diff(multiply(u.adjoint(), u).matrix, identity_op(full).matrix) == 0.0);

  auto conj = [&](const SparseOperator& op) { return multiply(multiply(u, op), u.adjoint()); };
  const double n = 3.0;

  // rule 1: a*_0 a_0 -> N - N_+
  {
    const SparseOperator lhs = conj(pair_hop(full, zero, zero));
    const SparseOperator rhs = diagonal_op(exc, [&](std::size_t i) {
      return n - exc->excitation_count(i);
    });
    CHECK(max_abs_diff(lhs.matrix, rhs.matrix) <= 1e-12);
  }
  const SparseOperator sqrt_nm = diagonal_op(exc, [&](std::size_t i) {
    return std::sqrt(n - exc->excitation_count(i));
  });
  for (const auto& p : exc->modes()) {
    // rule 2: a*_p a_0 -> a*_p sqrt(N - N_+) = sqrt(N) b*_p
    const SparseOperator lhs = conj(pair_hop(full, p, zero));
    const SparseOperator rhs = multiply(ladder(exc, p, LadderKind::a_dag), sqrt_nm);
    CHECK(max_abs_diff(lhs.matrix, rhs.matrix) <= 1e-12);
    const SparseMatrix bform =
        std::sqrt(n) * b_ladder(exc, p, LadderKind::b_dag).matrix;
    CHECK(max_abs_diff(lhs.matrix, bform) <= 1e-12);
    // rule 3: a*_0 a_p -> sqrt(N - N_+) a_p
    const SparseOperator lhs3 = conj(pair_hop(full, zero, p));
    const SparseOperator rhs3 = multiply(sqrt_nm, ladder(exc, p, LadderKind::a));
    CHECK(max_abs_diff(lhs3.matrix, rhs3.matrix) <= 1e-12);
    // rule 4: a*_p a_q -> a*_p a_q
    for (const auto& q : exc->modes()) {
      const SparseOperator lhs4 = conj(pair_hop(full, p, q));
      const SparseOperator rhs4 =
          multiply(ladder(exc, p, LadderKind::a_dag), ladder(exc, q, LadderKind::a));
      CHECK(max_abs_diff(lhs4.matrix, rhs4.matrix) <= 1e-12);
    }
  }
}

TEST_CASE("mixed commutators with quadratic number terms") {
  auto exc = build_basis(mode_set(1), 3, Sector::excitation_leq_n);
  for (const auto& p : exc->modes()) {
    const SparseOperator bp = b_ladder(exc, p, LadderKind::b);
    const SparseOperator bpd = b_ladder(exc, p, LadderKind::b_dag);
    for (const auto& q : exc->modes())
      for (const auto& r : exc->modes()) {
        const SparseOperator aqar =
            multiply(ladder(exc, q, LadderKind::a_dag), ladder(exc, r, LadderKind::a));
        const SparseOperator c1 = commutator(bp, aqar);
        if (p == q) {
          CHECK(max_abs_diff(c1.matrix, b_ladder(exc, r, LadderKind::b).matrix) <= 1e-12);
        } else {
          CHECK(max_abs_entry(c1.matrix) <= 1e-12);
        }
        const SparseOperator c2 = commutator(bpd, aqar);
        if (p == r) {
          const SparseMatrix expect = -b_ladder(exc, q, LadderKind::b_dag).matrix;
          CHECK(max_abs_diff(c2.matrix, expect) <= 1e-12);
        } else {
          CHECK(max_abs_entry(c2.matrix) <= 1e-12);
        }
      }
  }
}

TEST_CASE("momentum bookkeeping is integer-exact") {
  auto exc = build_basis(mode_set(2), 3, Sector::excitation_leq_n);
  for (const auto& p : exc->modes()) {
    const SparseOperator a = ladder(exc, p, LadderKind::a);
    CHECK_NOTHROW(a.verify_momentum());
    const SparseOperator b = b_ladder(exc, p, LadderKind::b_dag);
    CHECK_NOTHROW(b.verify_momentum());
  }
}

TEST_CASE("u_map rejects mismatched spaces") {
  auto full = build_basis(mode_set_with_zero(1), 3, Sector::particle_exactly_n);
  auto exc_wrong_n = build_basis(mode_set(1), 4, Sector::excitation_leq_n);
  CHECK_THROWS_AS(u_map(full, exc_wrong_n), ModeMismatch);
  auto exc_wrong_modes = build_basis(mode_set(2), 3, Sector::excitation_leq_n);
  CHECK_THROWS_AS(u_map(full, exc_wrong_modes), ModeMismatch);
}
