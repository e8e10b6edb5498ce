#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <optional>

#include "gpbose/fock.hpp"

namespace gpbose {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

//! Second-quantized operator over a FockBasis, stored row-compressed with
//! sorted columns. Every entry must connect states whose total momentum
//! differs by the declared transfer (exact integer bookkeeping).
struct SparseOperator {
  BasisPtr domain;     // basis of the input states (columns)
  BasisPtr codomain;   // basis of the output states (rows); == domain usually
  SparseMatrix matrix;
  Mode momentum_transfer{};
  bool hermitian = false;
  bool anti_hermitian = false;

  std::size_t rows() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix.cols()); }

  SparseOperator adjoint() const;
  void verify_flags(double tol = 1e-12) const;     // throws Error on violation
  void verify_momentum() const;                    // throws Error on violation
};

double max_abs_entry(const SparseMatrix& m);
double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b);

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator*(Complex s, const SparseOperator& a);
SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

//! Amplitude vector over a FockBasis.
struct StateVector {
  BasisPtr basis;
  Vector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

StateVector apply(const SparseOperator& op, const StateVector& v);

// identity on a basis
SparseOperator identity_op(const BasisPtr& basis);

// diagonal operator from a function of the state index
SparseOperator diagonal_op(const BasisPtr& basis,
                           const std::function<double(std::size_t)>& value);

}  // namespace gpbose
