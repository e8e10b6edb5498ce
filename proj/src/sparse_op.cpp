#include "gpbose/sparse_op.hpp"

#include "gpbose/errors.hpp"

namespace gpbose {

SparseOperator SparseOperator::adjoint() const {
  SparseOperator out;
  out.domain = codomain;
  out.codomain = domain;
  out.matrix = matrix.adjoint();
  out.momentum_transfer = -momentum_transfer;
  out.hermitian = hermitian;
  out.anti_hermitian = anti_hermitian;
  return out;
}

void SparseOperator::verify_flags(double tol) const {
  if (!hermitian && !anti_hermitian) return;
  const double scale = std::max(max_abs_entry(matrix), 1.0);
  SparseMatrix adj = matrix.adjoint();
  if (hermitian) {
    const double d = max_abs_diff(matrix, adj);
    if (d > tol * scale) throw Error("operator flagged hermitian is not");
  }
  if (anti_hermitian) {
    SparseMatrix neg = -adj;
    const double d = max_abs_diff(matrix, neg);
    if (d > tol * scale) throw Error("operator flagged anti-hermitian is not");
  }
}

void SparseOperator::verify_momentum() const {
  for (int row = 0; row < matrix.outerSize(); ++row) {
    const Mode& mrow = codomain->total_momentum(static_cast<std::size_t>(row));
    for (SparseMatrix::InnerIterator it(matrix, row); it; ++it) {
      if (it.value() == Complex(0.0, 0.0)) continue;
      const Mode& mcol = domain->total_momentum(static_cast<std::size_t>(it.col()));
      if (!((mrow - mcol) == momentum_transfer))
        throw Error("operator entry violates the declared momentum transfer");
    }
  }
}

double max_abs_entry(const SparseMatrix& m) {
  double v = 0.0;
  for (int row = 0; row < m.outerSize(); ++row)
    for (SparseMatrix::InnerIterator it(m, row); it; ++it)
      v = std::max(v, std::abs(it.value()));
  return v;
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix d = a - b;
  return max_abs_entry(d);
}

namespace {
void require_same_spaces(const SparseOperator& a, const SparseOperator& b) {
  if (!a.domain->same_layout(*b.domain) || !a.codomain->same_layout(*b.codomain))
    throw Error("operator arithmetic requires identical bases");
}
}  // namespace

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  require_same_spaces(a, b);
  SparseOperator out;
  out.domain = a.domain;
  out.codomain = a.codomain;
  out.matrix = a.matrix + b.matrix;
  out.momentum_transfer = a.momentum_transfer;
  if (!(a.momentum_transfer == b.momentum_transfer))
    throw Error("operator sum with mismatched momentum transfer");
  out.hermitian = a.hermitian && b.hermitian;
  out.anti_hermitian = a.anti_hermitian && b.anti_hermitian;
  return out;
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  SparseOperator nb = Complex(-1.0, 0.0) * b;
  return a + nb;
}

SparseOperator operator*(Complex s, const SparseOperator& a) {
  SparseOperator out = a;
  out.matrix *= s;
  if (s.imag() != 0.0) {
    out.hermitian = false;
    out.anti_hermitian = false;
  }
  return out;
}

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
  if (!a.domain->same_layout(*b.codomain))
    throw Error("operator product with mismatched inner basis");
  SparseOperator out;
  out.domain = b.domain;
  out.codomain = a.codomain;
  out.matrix = (a.matrix * b.matrix).pruned();
  out.momentum_transfer = a.momentum_transfer + b.momentum_transfer;
  return out;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  SparseOperator ab = multiply(a, b);
  SparseOperator ba = multiply(b, a);
  return ab - ba;
}

StateVector apply(const SparseOperator& op, const StateVector& v) {
  if (!op.domain->same_layout(*v.basis)) throw Error("apply: basis mismatch");
  StateVector out;
  out.basis = op.codomain;
  out.amplitudes = op.matrix * v.amplitudes;
  return out;
}

SparseOperator identity_op(const BasisPtr& basis) {
  SparseOperator out;
  out.domain = basis;
  out.codomain = basis;
  out.matrix.resize(static_cast<long>(basis->dim()), static_cast<long>(basis->dim()));
  out.matrix.setIdentity();
  out.hermitian = true;
  return out;
}

SparseOperator diagonal_op(const BasisPtr& basis,
                           const std::function<double(std::size_t)>& value) {
  SparseOperator out;
  out.domain = basis;
  out.codomain = basis;
  const long n = static_cast<long>(basis->dim());
  out.matrix.resize(n, n);
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double v = value(static_cast<std::size_t>(i));
    if (v != 0.0) trip.emplace_back(i, i, Complex(v, 0.0));
  }
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.hermitian = true;
  return out;
}

}  // namespace gpbose
