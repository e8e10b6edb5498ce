#pragma once

#include <cstdint>
#include <functional>

#include "gpbose/sparse_op.hpp"

namespace gpbose {

using Matvec = std::function<void(const Vector&, Vector&)>;

struct EigOptions {
  int k = 1;
  double tol = 1e-10;
  int max_iter = 400;
  std::uint64_t seed = 1234;
};

struct EigResult {
  std::vector<double> values;      // ascending
  std::vector<Vector> vectors;
  std::vector<double> residuals;   // ||A x - theta x|| per pair
  bool degeneracy_warning = false;
};

// k smallest eigenpairs of a Hermitian operator by Lanczos with full
// reorthogonalization; multiplicities are resolved by locking converged
// vectors and deflating. Residuals are certified against tol * max(1, |E|);
// throws NoConvergence otherwise. Deterministic under a fixed seed.
EigResult eigs_smallest(const Matvec& matvec, std::size_t dim, const EigOptions& opts);

EigResult eigs_smallest(const SparseOperator& op, const EigOptions& opts);
EigResult eigs_smallest(const DenseMatrix& m, const EigOptions& opts);

double lambda_min(const SparseOperator& op, std::uint64_t seed = 1234,
                  double tol = 1e-10);
double lambda_min(const DenseMatrix& m, std::uint64_t seed = 1234, double tol = 1e-10);
double lambda_max(const SparseOperator& op, std::uint64_t seed = 1234,
                  double tol = 1e-10);
double lambda_max(const DenseMatrix& m, std::uint64_t seed = 1234, double tol = 1e-10);

// operator 2-norm of a Hermitian matrix (largest |eigenvalue|)
double spectral_norm_hermitian(const SparseMatrix& m, std::uint64_t seed = 1234);

}  // namespace gpbose
