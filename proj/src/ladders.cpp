#include "gpbose/ladders.hpp"

#include <cmath>

#include "gpbose/errors.hpp"

namespace gpbose {

namespace {

struct Applied {
  bool alive = false;
  double amp = 0.0;
  std::vector<std::uint8_t> occ;
};

// Applies the product (rightmost factor first) to one basis state.
Applied apply_product(const FockBasis& basis, const std::vector<OpFactor>& factors,
                      std::size_t src, const std::vector<int>& positions) {
  Applied out;
  out.occ = basis.occupations(src);
  out.amp = 1.0;
  const int n_cap = basis.n_max();
  const bool excitation = basis.sector() == Sector::excitation_leq_n;
  const int zero_pos = basis.zero_mode_position();

  int total = 0;
  for (std::size_t i = 0; i < out.occ.size(); ++i) total += out.occ[i];
  // sector totals: excitation counts everything, particle counts everything
  // (fixed at N); the b-weight uses the excitation part only
  int n_exc = excitation ? total : total - (zero_pos >= 0 ? out.occ[zero_pos] : 0);

  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const int pos = positions[static_cast<std::size_t>(it - factors.rbegin())];
    const bool is_zero_mode = (pos == zero_pos);
    switch (it->kind) {
      case LadderKind::a: {
        const int n = out.occ[pos];
        if (n == 0) return out;
        out.amp *= std::sqrt(static_cast<double>(n));
        --out.occ[pos];
        --total;
        if (!is_zero_mode) --n_exc;
        break;
      }
      case LadderKind::a_dag: {
        if (total == n_cap) return out;  // sector truncation
        const int n = out.occ[pos];
        out.amp *= std::sqrt(static_cast<double>(n + 1));
        ++out.occ[pos];
        ++total;
        if (!is_zero_mode) ++n_exc;
        break;
      }
      case LadderKind::b: {
        const int n = out.occ[pos];
        if (n == 0) return out;
        out.amp *= std::sqrt(static_cast<double>(n));
        --out.occ[pos];
        --total;
        --n_exc;
        out.amp *= std::sqrt(static_cast<double>(n_cap - n_exc) / n_cap);
        break;
      }
      case LadderKind::b_dag: {
        if (n_exc == n_cap) return out;  // weight vanishes there anyway
        out.amp *= std::sqrt(static_cast<double>(n_cap - n_exc) / n_cap);
        const int n = out.occ[pos];
        out.amp *= std::sqrt(static_cast<double>(n + 1));
        ++out.occ[pos];
        ++total;
        ++n_exc;
        break;
      }
    }
  }
  out.alive = true;
  return out;
}

}  // namespace

SparseOperator build_from_terms(const BasisPtr& basis,
                                const std::vector<ProductTerm>& terms,
                                Mode momentum_transfer, bool hermitian,
                                bool anti_hermitian, bool drop_outside) {
  const bool excitation = basis->sector() == Sector::excitation_leq_n;
  // resolve mode positions once per term
  std::vector<std::vector<int>> positions(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    positions[t].reserve(terms[t].factors.size());
    // stored reversed to match the right-to-left application order
    for (auto it = terms[t].factors.rbegin(); it != terms[t].factors.rend(); ++it) {
      const int pos = basis->mode_position(it->k);
      if (pos < 0) throw UnknownMode("build_from_terms: mode not in basis");
      if (!excitation && (it->kind == LadderKind::b || it->kind == LadderKind::b_dag))
        throw WrongSector("b operators live on the excitation sector");
      positions[t].push_back(pos);
    }
  }

  std::vector<Eigen::Triplet<Complex>> trip;
  const std::size_t dim = basis->dim();
  for (std::size_t src = 0; src < dim; ++src) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (terms[t].coeff == 0.0) continue;
      Applied res = apply_product(*basis, terms[t].factors, src, positions[t]);
      if (!res.alive || res.amp == 0.0) continue;
      const long dst = basis->index_of(res.occ);
      if (dst < 0) {
        if (drop_outside) continue;
        throw Error("build_from_terms: product left the basis");
      }
      trip.emplace_back(dst, static_cast<long>(src),
                        Complex(terms[t].coeff * res.amp, 0.0));
    }
  }

  SparseOperator out;
  out.domain = basis;
  out.codomain = basis;
  out.matrix.resize(static_cast<long>(dim), static_cast<long>(dim));
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.makeCompressed();
  out.momentum_transfer = momentum_transfer;
  out.hermitian = hermitian;
  out.anti_hermitian = anti_hermitian;
  out.verify_flags();
  out.verify_momentum();
  return out;
}

SparseOperator ladder(const BasisPtr& basis, const Mode& p, LadderKind kind) {
  if (basis->mode_position(p) < 0) throw UnknownMode("ladder: mode not in basis");
  if (kind != LadderKind::a && kind != LadderKind::a_dag)
    return b_ladder(basis, p, kind);
  const Mode transfer = (kind == LadderKind::a) ? -p : p;
  return build_from_terms(basis, {{1.0, {OpFactor{kind, p}}}}, transfer, false, false,
                          true);
}

SparseOperator pair_hop(const BasisPtr& basis, const Mode& p, const Mode& q) {
  return build_from_terms(
      basis,
      {{1.0, {OpFactor{LadderKind::a_dag, p}, OpFactor{LadderKind::a, q}}}},
      p - q, p == q, false);
}

SparseOperator b_ladder(const BasisPtr& basis, const Mode& p, LadderKind kind) {
  if (basis->sector() != Sector::excitation_leq_n)
    throw WrongSector("b_ladder: excitation sector required");
  if (basis->mode_position(p) < 0) throw UnknownMode("b_ladder: mode not in basis");
  if (kind == LadderKind::a || kind == LadderKind::a_dag)
    return ladder(basis, p, kind);
  const Mode transfer = (kind == LadderKind::b) ? -p : p;
  return build_from_terms(basis, {{1.0, {OpFactor{kind, p}}}}, transfer, false, false,
                          true);
}

SparseOperator number_operator(const BasisPtr& basis, const std::vector<Mode>& subset) {
  std::vector<int> pos;
  pos.reserve(subset.size());
  for (const auto& k : subset) {
    const int p = basis->mode_position(k);
    if (p < 0) throw UnknownMode("number_operator: mode not in basis");
    pos.push_back(p);
  }
  return diagonal_op(basis, [&](std::size_t idx) {
    const auto& occ = basis->occupations(idx);
    double n = 0.0;
    for (int p : pos) n += occ[static_cast<std::size_t>(p)];
    return n;
  });
}

SparseOperator n_plus_operator(const BasisPtr& basis) {
  return diagonal_op(basis, [&](std::size_t idx) {
    return static_cast<double>(basis->excitation_count(idx));
  });
}

SparseOperator u_map(const BasisPtr& full, const BasisPtr& exc) {
  if (full->sector() != Sector::particle_exactly_n ||
      exc->sector() != Sector::excitation_leq_n)
    throw ModeMismatch("u_map: expects (particle sector, excitation sector)");
  if (full->n_max() != exc->n_max()) throw ModeMismatch("u_map: particle numbers differ");
  std::vector<Mode> nonzero;
  for (const auto& k : full->modes())
    if (!k.is_zero()) nonzero.push_back(k);
  if (nonzero != exc->modes())
    throw ModeMismatch("u_map: excitation modes must be the nonzero modes of the full basis");
  if (full->dim() != exc->dim()) throw ModeMismatch("u_map: dimensions differ");

  const int zero_pos = full->zero_mode_position();
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(full->dim());
  std::vector<std::uint8_t> reduced(exc->num_modes());
  for (std::size_t src = 0; src < full->dim(); ++src) {
    const auto& occ = full->occupations(src);
    std::size_t j = 0;
    for (std::size_t i = 0; i < occ.size(); ++i)
      if (static_cast<int>(i) != zero_pos) reduced[j++] = occ[i];
    const long dst = exc->index_of(reduced);
    if (dst < 0) throw Error("u_map: relabeled state missing from the excitation basis");
    trip.emplace_back(dst, static_cast<long>(src), Complex(1.0, 0.0));
  }

  SparseOperator out;
  out.domain = full;
  out.codomain = exc;
  out.matrix.resize(static_cast<long>(exc->dim()), static_cast<long>(full->dim()));
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.makeCompressed();
  out.verify_momentum();
  return out;
}

}  // namespace gpbose
