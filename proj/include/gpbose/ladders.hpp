#pragma once

#include <vector>

#include "gpbose/sparse_op.hpp"

namespace gpbose {

enum class LadderKind { a, a_dag, b, b_dag };

//! One elementary factor in a normal product of ladder operators.
//! Products are applied right-to-left, exactly as written on paper.
struct OpFactor {
  LadderKind kind;
  Mode k;
};

//! A scalar coefficient times a product of ladder factors (leftmost first).
struct ProductTerm {
  double coeff;
  std::vector<OpFactor> factors;
};

// Assembles sum_t terms[t] as a sparse matrix over the basis. The b-factors
// carry their sqrt((N - N_+)/N) weight evaluated on the state they act on;
// a_dag factors truncate states that would leave the sector. Products that
// land outside the basis throw, unless drop_outside maps them to zero (bare
// ladders on the fixed-N sector).
SparseOperator build_from_terms(const BasisPtr& basis,
                                const std::vector<ProductTerm>& terms,
                                Mode momentum_transfer, bool hermitian,
                                bool anti_hermitian, bool drop_outside = false);

// Standard ladder operator with matrix elements sqrt(n), sqrt(n+1).
SparseOperator ladder(const BasisPtr& basis, const Mode& p, LadderKind kind);

// a*_p a_q as one product term; on the fixed-N sector this is the only way
// to build it, because the intermediate state lives in the (N-1)-sector.
SparseOperator pair_hop(const BasisPtr& basis, const Mode& p, const Mode& q);

// Generalized ladder b_p = sqrt((N - N_+)/N) a_p (excitation sector only).
SparseOperator b_ladder(const BasisPtr& basis, const Mode& p, LadderKind kind);

// Diagonal operator sum_{p in subset} n_p.
SparseOperator number_operator(const BasisPtr& basis, const std::vector<Mode>& subset);

// N_+ = number of particles outside the zero mode (either sector).
SparseOperator n_plus_operator(const BasisPtr& basis);

// The condensate-removal unitary: maps the N-particle sector onto the
// excitation sector by dropping the zero-mode occupation. A permutation
// matrix with unit coefficients; U U^dag = U^dag U = 1 exactly.
SparseOperator u_map(const BasisPtr& full, const BasisPtr& exc);

}  // namespace gpbose
