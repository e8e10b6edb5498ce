#include "gpbose/remainder.hpp"

#include <cmath>

#include "gpbose/errors.hpp"

namespace gpbose {

namespace {

double eta_norm(const EtaMap& eta) {
  double s = 0.0;
  for (const auto& [k, v] : eta) s += v * v;
  return std::sqrt(s);
}

void guard(const EtaMap& eta, double radius, const char* who) {
  const double n = eta_norm(eta);
  if (n >= radius)
    throw ConvergenceGuard(std::string(who) + ": ||eta|| = " + std::to_string(n) +
                           " exceeds the convergence radius " + std::to_string(radius));
}

}  // namespace

StateVector bogoliubov_remainder(const BasisPtr& basis, const EtaMap& eta_h,
                                 const Mode& p, const StateVector& xi,
                                 double eta_radius, const ExpOptions& opts) {
  guard(eta_h, eta_radius, "bogoliubov_remainder");
  const Generator b_gen = build_b_generator(basis, eta_h);
  const SparseOperator bp = b_ladder(basis, p, LadderKind::b);
  const SparseOperator bdag_mp = b_ladder(basis, -p, LadderKind::b_dag);

  StateVector fwd = exp_apply(b_gen, xi, 1.0, opts);
  fwd = apply(bp, fwd);
  StateVector conj = exp_apply(b_gen, fwd, -1.0, opts);

  const auto it = eta_h.find(p);
  const double ep = (it == eta_h.end()) ? 0.0 : it->second;
  StateVector out;
  out.basis = basis;
  out.amplitudes = conj.amplitudes - std::cosh(ep) * (bp.matrix * xi.amplitudes) -
                   std::sinh(ep) * (bdag_mp.matrix * xi.amplitudes);
  return out;
}

StateVector bogoliubov_remainder_offsupport(const BasisPtr& basis, const EtaMap& eta_h,
                                            const Mode& p, const StateVector& xi,
                                            double eta_radius, const ExpOptions& opts) {
  StateVector d = bogoliubov_remainder(basis, eta_h, p, xi, eta_radius, opts);
  std::vector<ProductTerm> terms;
  for (const auto& [q, v] : eta_h) {
    if (v == 0.0) continue;
    terms.push_back({v / basis->n_max(),
                     {OpFactor{LadderKind::b_dag, q}, OpFactor{LadderKind::a_dag, -q},
                      OpFactor{LadderKind::a, p}}});
  }
  const SparseOperator corr = build_from_terms(basis, terms, -p, false, false);
  StateVector out;
  out.basis = basis;
  out.amplitudes = d.amplitudes + corr.matrix * xi.amplitudes;
  return out;
}

std::vector<StateVector> bch_partial_sums(const BasisPtr& basis, const EtaMap& eta_h,
                                          const Mode& p, int m_max,
                                          const StateVector& xi, double eta_radius) {
  guard(eta_h, eta_radius, "bch_partial_sums");
  const Generator b_gen = build_b_generator(basis, eta_h);
  SparseOperator nested = b_ladder(basis, p, LadderKind::b);  // ad^(0)

  std::vector<StateVector> sums;
  Vector acc = Vector::Zero(static_cast<long>(basis->dim()));
  double factorial = 1.0;
  double sign = 1.0;
  for (int n = 0; n <= m_max; ++n) {
    if (n > 0) {
      nested = commutator(b_gen.op, nested);
      factorial *= n;
      sign = -sign;
    }
    acc += (sign / factorial) * (nested.matrix * xi.amplitudes);
    StateVector s;
    s.basis = basis;
    s.amplitudes = acc;
    sums.push_back(std::move(s));
  }
  return sums;
}

}  // namespace gpbose
