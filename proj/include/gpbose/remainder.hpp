#pragma once

#include "gpbose/expm.hpp"

namespace gpbose {

// Deviation of the generalized transformation from the hyperbolic rotation:
//   d_p xi = e^{-B} b_p e^{B} xi - cosh(eta_p) b_p xi - sinh(eta_p) b*_{-p} xi.
// Enforces the series guard ||eta|| < eta_radius (ConvergenceGuard).
StateVector bogoliubov_remainder(const BasisPtr& basis, const EtaMap& eta_h,
                                 const Mode& p, const StateVector& xi,
                                 double eta_radius = 0.3,
                                 const ExpOptions& opts = {});

// Corrected remainder for p outside the support of eta:
//   dbar_p xi = d_p xi + N^{-1} sum_q eta_q b*_q a*_{-q} a_p xi
StateVector bogoliubov_remainder_offsupport(const BasisPtr& basis, const EtaMap& eta_h,
                                            const Mode& p, const StateVector& xi,
                                            double eta_radius = 0.3,
                                            const ExpOptions& opts = {});

// Partial sums sum_{n<=m} (-1)^n/n! ad^(n)_B(b_p) xi of the conjugation
// series, with the nested commutators formed by sparse multiplication.
std::vector<StateVector> bch_partial_sums(const BasisPtr& basis, const EtaMap& eta_h,
                                          const Mode& p, int m_max,
                                          const StateVector& xi,
                                          double eta_radius = 0.3);

}  // namespace gpbose
