#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "gpbose/ladders.hpp"
#include "gpbose/potential.hpp"
#include "gpbose/scattering.hpp"

namespace gpbose {

//! Radial Fourier transform V^(r/N) cached per integer |m_r|^2.
class VhatProvider {
 public:
  VhatProvider(Potential pot, int n_particles);

  double operator()(const Mode& r) const;
  double at_zero() const { return (*this)(Mode{}); }
  int n_particles() const { return n_; }
  const Potential& potential() const { return pot_; }

 private:
  Potential pot_;
  int n_;
  mutable std::unordered_map<long, double> cache_;
};

struct QuarticStats {
  long terms_kept = 0;
  long terms_dropped = 0;  // boundary terms whose partner index leaves the mode set
};

// Full Hamiltonian on the N-particle sector (zero mode included):
//   sum_p p^2 a*_p a_p + (1/2N) sum_{p,q,r} V^(r/N) a*_{p+r} a*_q a_p a_{q+r}
// with every momentum sum truncated to the basis mode set.
SparseOperator build_hn(const BasisPtr& full, const VhatProvider& vhat,
                        QuarticStats* stats = nullptr);

struct LPieces {
  SparseOperator l0, l2, l3, l4;
};

// The four excitation-Hamiltonian pieces on F_+^{<=N}, truncated to the mode
// set exactly like build_hn so that L = U H U^dag holds as a matrix identity.
LPieces build_l_pieces(const BasisPtr& exc, const VhatProvider& vhat,
                       QuarticStats* stats = nullptr);

struct KineticPotential {
  SparseOperator kinetic, potential;
};

KineticPotential build_k_vn(const BasisPtr& exc, const VhatProvider& vhat);

//! Renormalized-Hamiltonian building blocks on the excitation sector.
struct EffectivePieces {
  SparseOperator d_n;       // diagonal condensate part
  SparseOperator kinetic;   // K
  SparseOperator q_nl;      // low-momentum quadratic part
  SparseOperator c_n;       // cubic part
  SparseOperator v_n;       // quartic part
  SparseOperator g_eff;     // sum of the five pieces
  std::vector<std::string> warnings;
};

EffectivePieces build_geff(const BasisPtr& exc, const VhatProvider& vhat, double a0,
                           const EtaCoefficients& eta, double ell);

//! Everything a verification run needs, assembled once per configuration.
struct HamiltonianBundle {
  BasisPtr full;  // particle sector
  BasisPtr exc;   // excitation sector
  SparseOperator h_n;
  LPieces l;
  SparseOperator kinetic, v_n;
  std::optional<EffectivePieces> eff;
  QuarticStats hn_stats, l_stats;
  int n_particles = 0;
  double a0 = 0.0, ell = 0.0, alpha = 0.0, beta = 0.0;
  std::vector<std::string> warnings;
};

HamiltonianBundle build_bundle(const std::vector<Mode>& modes, int n_particles,
                               const Potential& pot,
                               const EtaCoefficients* eta = nullptr,
                               double a0 = 0.0, double ell = 0.0,
                               std::size_t dim_budget = 5'000'000);

}  // namespace gpbose
