#include "gpbose/generator.hpp"

#include <cmath>
#include <unordered_set>

#include "gpbose/errors.hpp"

namespace gpbose {

Generator build_b_generator(const BasisPtr& basis, const EtaMap& eta) {
  if (basis->sector() != Sector::excitation_leq_n)
    throw WrongSector("build_b_generator: excitation sector required");
  std::vector<ProductTerm> terms;
  double sum2 = 0.0;
  for (const auto& [p, v] : eta) {
    if (basis->mode_position(p) < 0)
      throw UnsupportedMode("build_b_generator: eta support outside the basis modes");
    const auto it = eta.find(-p);
    if (it == eta.end() || it->second != v)
      throw AsymmetricModeSet("build_b_generator: eta must satisfy eta_p = eta_-p");
    sum2 += v * v;
    if (v == 0.0) continue;
    terms.push_back({0.5 * v,
                     {OpFactor{LadderKind::b_dag, p}, OpFactor{LadderKind::b_dag, -p}}});
    terms.push_back({-0.5 * v,
                     {OpFactor{LadderKind::b, p}, OpFactor{LadderKind::b, -p}}});
  }
  Generator gen;
  gen.kind = Generator::Kind::quadratic_b;
  gen.eta_l2 = std::sqrt(sum2);
  gen.op = build_from_terms(basis, terms, Mode{}, false, true);
  return gen;
}

Generator build_a_generator(const BasisPtr& basis, const EtaMap& eta, double alpha,
                            double beta, double ell) {
  if (basis->sector() != Sector::excitation_leq_n)
    throw WrongSector("build_a_generator: excitation sector required");
  if (!(alpha > beta && beta > 0.0))
    throw ConfigError("build_a_generator: need alpha > beta > 0");
  if (basis->modes().empty()) throw EmptyCutoffSet("build_a_generator: no modes");

  const double p_high = std::pow(ell, -alpha);
  const double p_low = std::pow(ell, -beta);
  std::vector<Mode> high, low;
  for (const auto& k : basis->modes()) {
    if (k.p_abs() >= p_high) high.push_back(k);
    if (k.p_abs() <= p_low) low.push_back(k);
  }

  Generator gen;
  gen.kind = Generator::Kind::cubic_a;
  if (high.empty()) gen.warnings.push_back("EmptyCutoffSet: P_H does not meet the lattice");
  if (low.empty()) gen.warnings.push_back("EmptyCutoffSet: P_L does not meet the lattice");

  std::unordered_set<Mode, ModeHash> in_set(basis->modes().begin(), basis->modes().end());
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(basis->n_max()));
  std::vector<ProductTerm> terms;
  double sum2 = 0.0;
  for (const auto& r : high) {
    const auto it = eta.find(r);
    const double er = (it == eta.end()) ? 0.0 : it->second;
    if (er != 0.0) sum2 += er * er;
    for (const auto& v : low) {
      const Mode rv = r + v;
      if (rv.is_zero() || !in_set.count(rv)) {
        ++gen.dropped_terms;
        continue;
      }
      if (er == 0.0) continue;
      terms.push_back({inv_sqrt_n * er,
                       {OpFactor{LadderKind::b_dag, rv}, OpFactor{LadderKind::a_dag, -r},
                        OpFactor{LadderKind::a, v}}});
      terms.push_back({-inv_sqrt_n * er,
                       {OpFactor{LadderKind::a_dag, v}, OpFactor{LadderKind::a, -r},
                        OpFactor{LadderKind::b, rv}}});
    }
  }
  gen.eta_l2 = std::sqrt(sum2);
  gen.op = build_from_terms(basis, terms, Mode{}, false, true);
  return gen;
}

}  // namespace gpbose
