#include "gpbose/hamiltonian.hpp"

#include <cmath>
#include <unordered_set>

#include "gpbose/errors.hpp"

namespace gpbose {

VhatProvider::VhatProvider(Potential pot, int n_particles)
    : pot_(std::move(pot)), n_(n_particles) {
  pot_.validate();
}

double VhatProvider::operator()(const Mode& r) const {
  const long key = r.norm2();
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const double v = fourier_v(pot_, r.p_abs() / n_);
  cache_.emplace(key, v);
  return v;
}

namespace {

// Quartic interaction terms (1/2N) V^(r/N) a*_{p+r} a*_q a_X a_Y with all four
// operator indices inside the mode set. Shared by the full Hamiltonian, L4
// and V_N (their operator orderings agree because annihilators commute).
std::vector<ProductTerm> quartic_terms(const std::vector<Mode>& modes,
                                       const VhatProvider& vhat,
                                       QuarticStats* stats) {
  std::unordered_set<Mode, ModeHash> in_set(modes.begin(), modes.end());
  const double inv2n = 0.5 / vhat.n_particles();
  std::vector<ProductTerm> terms;
  for (const auto& p : modes)
    for (const auto& q : modes)
      for (const auto& t1 : modes) {  // t1 = p + r
        const Mode r = t1 - p;
        const Mode t2 = q + r;
        if (!in_set.count(t2)) {
          if (stats) ++stats->terms_dropped;
          continue;
        }
        if (stats) ++stats->terms_kept;
        terms.push_back({inv2n * vhat(r),
                         {OpFactor{LadderKind::a_dag, t1}, OpFactor{LadderKind::a_dag, q},
                          OpFactor{LadderKind::a, p}, OpFactor{LadderKind::a, t2}}});
      }
  return terms;
}

// Cubic terms coeff(p) [ b*_{p+q} a*_{-p} a_q + h.c. ] over p, q in the mode
// set with p + q inside it as well.
std::vector<ProductTerm> cubic_terms(const std::vector<Mode>& modes,
                                     const std::function<double(const Mode&)>& coeff) {
  std::unordered_set<Mode, ModeHash> in_set(modes.begin(), modes.end());
  std::vector<ProductTerm> terms;
  for (const auto& p : modes)
    for (const auto& q : modes) {
      const Mode pq = p + q;
      if (pq.is_zero() || !in_set.count(pq)) continue;
      const double c = coeff(p);
      if (c == 0.0) continue;
      terms.push_back({c,
                       {OpFactor{LadderKind::b_dag, pq}, OpFactor{LadderKind::a_dag, -p},
                        OpFactor{LadderKind::a, q}}});
      terms.push_back({c,
                       {OpFactor{LadderKind::a_dag, q}, OpFactor{LadderKind::a, -p},
                        OpFactor{LadderKind::b, pq}}});
    }
  return terms;
}

SparseOperator kinetic_diag(const BasisPtr& basis) {
  const auto& modes = basis->modes();
  return diagonal_op(basis, [&](std::size_t idx) {
    const auto& occ = basis->occupations(idx);
    double e = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) e += modes[i].p2() * occ[i];
    return e;
  });
}

}  // namespace

SparseOperator build_hn(const BasisPtr& full, const VhatProvider& vhat,
                        QuarticStats* stats) {
  if (full->sector() != Sector::particle_exactly_n)
    throw WrongSector("build_hn: particle sector required");
  auto terms = quartic_terms(full->modes(), vhat, stats);
  SparseOperator h = build_from_terms(full, terms, Mode{}, true, false);
  SparseOperator k = kinetic_diag(full);
  return h + k;
}

LPieces build_l_pieces(const BasisPtr& exc, const VhatProvider& vhat,
                       QuarticStats* stats) {
  if (exc->sector() != Sector::excitation_leq_n)
    throw WrongSector("build_l_pieces: excitation sector required");
  const int n = vhat.n_particles();
  const double vhat0 = vhat.at_zero();
  const auto& modes = exc->modes();

  LPieces out;
  out.l0 = diagonal_op(exc, [&](std::size_t idx) {
    const double np = exc->excitation_count(idx);
    return (n - 1.0) / (2.0 * n) * vhat0 * (n - np) +
           vhat0 / (2.0 * n) * np * (n - np);
  });
  out.l0.hermitian = true;

  // L2 = K + sum_p V^(p/N) [ b*_p b_p - a*_p a_p / N ]
  //        + (1/2) sum_p V^(p/N) [ b*_p b*_{-p} + b_p b_{-p} ]
  std::vector<ProductTerm> l2_terms;
  for (const auto& p : modes) {
    const double vp = vhat(p);
    l2_terms.push_back({vp,
                        {OpFactor{LadderKind::b_dag, p}, OpFactor{LadderKind::b, p}}});
    l2_terms.push_back({0.5 * vp,
                        {OpFactor{LadderKind::b_dag, p}, OpFactor{LadderKind::b_dag, -p}}});
    l2_terms.push_back({0.5 * vp,
                        {OpFactor{LadderKind::b, p}, OpFactor{LadderKind::b, -p}}});
  }
  SparseOperator l2 = build_from_terms(exc, l2_terms, Mode{}, true, false);
  SparseOperator l2_diag = diagonal_op(exc, [&](std::size_t idx) {
    const auto& occ = exc->occupations(idx);
    double e = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i)
      e += (modes[i].p2() - vhat(modes[i]) / n) * occ[i];
    return e;
  });
  out.l2 = l2 + l2_diag;

  auto l3_terms = cubic_terms(modes, [&](const Mode& p) {
    return vhat(p) / std::sqrt(static_cast<double>(n));
  });
  out.l3 = build_from_terms(exc, l3_terms, Mode{}, true, false);

  auto l4_terms = quartic_terms(modes, vhat, stats);
  out.l4 = build_from_terms(exc, l4_terms, Mode{}, true, false);
  return out;
}

KineticPotential build_k_vn(const BasisPtr& exc, const VhatProvider& vhat) {
  if (exc->sector() != Sector::excitation_leq_n)
    throw WrongSector("build_k_vn: excitation sector required");
  KineticPotential out;
  out.kinetic = kinetic_diag(exc);
  auto terms = quartic_terms(exc->modes(), vhat, nullptr);
  out.potential = build_from_terms(exc, terms, Mode{}, true, false);
  return out;
}

EffectivePieces build_geff(const BasisPtr& exc, const VhatProvider& vhat, double a0,
                           const EtaCoefficients& eta, double ell) {
  if (exc->sector() != Sector::excitation_leq_n)
    throw WrongSector("build_geff: excitation sector required");
  const int n = vhat.n_particles();
  const double vhat0 = vhat.at_zero();
  const double fourpia = 4.0 * M_PI * a0;
  const auto& modes = exc->modes();
  const double p_high = eta.high_cutoff(ell);

  EffectivePieces out;
  out.d_n = diagonal_op(exc, [&](std::size_t idx) {
    const double np = exc->excitation_count(idx);
    return fourpia * (n - np) + (vhat0 - fourpia) * np * (1.0 - np / n);
  });

  // Q acts on the complement of the high-momentum set.
  std::vector<Mode> low;
  for (const auto& p : modes)
    if (p.p_abs() < p_high) low.push_back(p);
  if (low.empty())
    out.warnings.push_back("Q piece: P_H covers every lattice mode");
  if (low.size() == modes.size())
    out.warnings.push_back("EmptyCutoffSet: P_H does not intersect the lattice");

  std::vector<int> low_pos;
  for (const auto& p : low) low_pos.push_back(exc->mode_position(p));
  SparseOperator q_diag = diagonal_op(exc, [&](std::size_t idx) {
    const auto& occ = exc->occupations(idx);
    const double np = exc->excitation_count(idx);
    double nl = 0.0;
    for (int pos : low_pos) nl += occ[static_cast<std::size_t>(pos)];
    return vhat0 * nl * (1.0 - np / n);
  });
  std::vector<ProductTerm> q_terms;
  for (const auto& p : low) {
    q_terms.push_back({fourpia,
                       {OpFactor{LadderKind::b_dag, p}, OpFactor{LadderKind::b_dag, -p}}});
    q_terms.push_back({fourpia,
                       {OpFactor{LadderKind::b, p}, OpFactor{LadderKind::b, -p}}});
  }
  SparseOperator q_pair = build_from_terms(exc, q_terms, Mode{}, true, false);
  out.q_nl = q_diag + q_pair;

  auto c_terms = cubic_terms(modes, [&](const Mode& p) {
    return vhat(p) / std::sqrt(static_cast<double>(n));
  });
  out.c_n = build_from_terms(exc, c_terms, Mode{}, true, false);

  out.kinetic = kinetic_diag(exc);
  auto v_terms = quartic_terms(modes, vhat, nullptr);
  out.v_n = build_from_terms(exc, v_terms, Mode{}, true, false);

  out.g_eff = out.d_n + out.kinetic + out.q_nl + out.c_n + out.v_n;
  out.g_eff.hermitian = true;
  out.g_eff.verify_flags();
  return out;
}

HamiltonianBundle build_bundle(const std::vector<Mode>& modes, int n_particles,
                               const Potential& pot, const EtaCoefficients* eta,
                               double a0, double ell, std::size_t dim_budget) {
  if (!is_symmetric(modes)) throw AsymmetricModeSet("build_bundle: mode set not symmetric");
  HamiltonianBundle b;
  b.n_particles = n_particles;
  b.a0 = a0;
  b.ell = ell;

  std::vector<Mode> with_zero = modes;
  with_zero.push_back(Mode{});
  b.full = build_basis(with_zero, n_particles, Sector::particle_exactly_n, dim_budget);
  b.exc = build_basis(modes, n_particles, Sector::excitation_leq_n, dim_budget);

  VhatProvider vhat(pot, n_particles);
  b.h_n = build_hn(b.full, vhat, &b.hn_stats);
  b.l = build_l_pieces(b.exc, vhat, &b.l_stats);
  auto kv = build_k_vn(b.exc, vhat);
  b.kinetic = kv.kinetic;
  b.v_n = kv.potential;
  if (eta != nullptr) {
    b.alpha = eta->alpha;
    b.beta = eta->beta;
    b.eff = build_geff(b.exc, vhat, a0, *eta, ell);
    for (const auto& w : b.eff->warnings) b.warnings.push_back(w);
  }
  return b;
}

}  // namespace gpbose
