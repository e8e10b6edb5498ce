#pragma once

#include <functional>
#include <optional>

#include "gpbose/generator.hpp"

namespace gpbose {

struct ExpOptions {
  double tol = 1e-10;
  int max_krylov = 160;
  std::size_t dense_dim_max = 2000;
};

// e^{G} for a dense anti-Hermitian matrix, via the Hermitian eigensystem of
// iG; unitary to machine precision by construction.
DenseMatrix dense_expm_antihermitian(const DenseMatrix& g);

DenseMatrix to_dense(const SparseMatrix& m);

// w ~= e^{s G} v for sparse anti-Hermitian G via a Lanczos subspace on iG;
// subdivides s when the subspace stagnates, throws KrylovStagnation if even
// subdivision cannot reach the tolerance.
Vector krylov_exp_apply(const SparseMatrix& g, const Vector& v, double s,
                        const ExpOptions& opts = {});

// Applies e^{s * gen} to a state, picking the dense or Krylov path by size.
StateVector exp_apply(const Generator& gen, const StateVector& state, double s,
                      const ExpOptions& opts = {});

enum class ConjugationMode { dense, krylov };

//! e^{-G} Op e^{G}: the dense mode materializes the conjugated matrix,
//! the Krylov mode exposes the quadratic form xi -> <xi, e^{-G} Op e^{G} xi>.
struct ConjugationResult {
  std::optional<DenseMatrix> dense;
  std::function<double(const StateVector&)> quadratic_form;
  ConjugationMode mode = ConjugationMode::dense;
  double tol = 0.0;
  double hermiticity_drift = 0.0;  // dense mode only
};

ConjugationResult conjugate(const SparseOperator& op, const Generator& gen,
                            ConjugationMode mode, const ExpOptions& opts = {});

}  // namespace gpbose
