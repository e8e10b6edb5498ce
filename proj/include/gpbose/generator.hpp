#pragma once

#include <string>
#include <unordered_map>

#include "gpbose/ladders.hpp"

namespace gpbose {

using EtaMap = std::unordered_map<Mode, double, ModeHash>;

//! Anti-Hermitian generator of a renormalizing conjugation. The quadratic
//! kind changes the excitation count by +-2, the cubic kind by +-1.
struct Generator {
  enum class Kind { quadratic_b, cubic_a };
  Kind kind;
  SparseOperator op;
  double eta_l2 = 0.0;      // l2 norm of the coefficients actually used
  long dropped_terms = 0;   // cubic terms whose r+v left the mode set
  std::vector<std::string> warnings;
};

// B(eta) = (1/2) sum_p eta_p (b*_p b*_{-p} - b_p b_{-p}); eta real and even,
// supported inside the basis mode set (UnsupportedMode otherwise).
Generator build_b_generator(const BasisPtr& basis, const EtaMap& eta);

// A = N^{-1/2} sum_{r in P_H, v in P_L} eta_r (b*_{r+v} a*_{-r} a_v - h.c.)
// with P_H = {|p| >= ell^-alpha}, P_L = {|p| <= ell^-beta} intersected with
// the basis mode set; terms with r+v outside the set are dropped and counted.
Generator build_a_generator(const BasisPtr& basis, const EtaMap& eta, double alpha,
                            double beta, double ell);

}  // namespace gpbose
