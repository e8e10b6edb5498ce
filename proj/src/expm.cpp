#include "gpbose/expm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gpbose/errors.hpp"

namespace gpbose {

DenseMatrix to_dense(const SparseMatrix& m) { return DenseMatrix(m); }

DenseMatrix dense_expm_antihermitian(const DenseMatrix& g) {
  const DenseMatrix h = Complex(0.0, 1.0) * g;  // Hermitian
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw Error("dense_expm_antihermitian: eigensolver failed");
  const auto& u = es.eigenvectors();
  Vector phases(es.eigenvalues().size());
  for (long i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i)));
  return u * phases.asDiagonal() * u.adjoint();
}

namespace {

// One Lanczos pass on iG of dimension m; returns the approximation and a
// stagnation-based error estimate.
struct KrylovPass {
  Vector w;
  double err;
};

KrylovPass krylov_pass(const SparseMatrix& g, const Vector& v, double s, int m_max,
                       double tol) {
  const long n = v.size();
  const double beta0 = v.norm();
  if (beta0 == 0.0) return {Vector::Zero(n), 0.0};

  std::vector<Vector> basis;
  basis.push_back(v / beta0);
  std::vector<double> alpha, beta;
  Vector w_prev = Vector::Zero(n);
  Vector approx_old = Vector::Zero(n);
  double err = std::numeric_limits<double>::infinity();

  auto tridiag_exp_col0 = [&](int m) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) {
        t(i, i + 1) = beta[static_cast<std::size_t>(i)];
        t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    Vector col = Vector::Zero(m);
    for (int i = 0; i < m; ++i) {
      Complex acc(0.0, 0.0);
      for (int k = 0; k < m; ++k)
        acc += es.eigenvectors()(i, k) * std::exp(Complex(0.0, -s * es.eigenvalues()(k))) *
               es.eigenvectors()(0, k);
      col(i) = acc;
    }
    return col;
  };

  for (int j = 0; j < m_max; ++j) {
    Vector w = Complex(0.0, 1.0) * (g * basis.back());
    const Complex a = basis.back().dot(w);
    alpha.push_back(a.real());
    w -= a * basis.back();
    if (j > 0) w -= beta.back() * basis[basis.size() - 2];
    for (const auto& q : basis) w -= q.dot(w) * q;  // full reorthogonalization
    const double b = w.norm();

    const int m = j + 1;
    if (m >= 2 || b < 1e-14) {
      const Vector col = tridiag_exp_col0(m);
      Vector approx = Vector::Zero(n);
      for (int i = 0; i < m; ++i) approx += col(i) * basis[static_cast<std::size_t>(i)];
      approx *= beta0;
      err = (approx - approx_old).norm() / beta0;
      approx_old = approx;
      if (b < 1e-14) return {approx, 0.0};  // invariant subspace reached
      if (m >= 4 && err < tol) return {approx, err};
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  return {approx_old, err};
}

}  // namespace

Vector krylov_exp_apply(const SparseMatrix& g, const Vector& v, double s,
                        const ExpOptions& opts) {
  // subdivide the step until the subspace converges
  for (int depth = 0; depth <= 6; ++depth) {
    const int steps = 1 << depth;
    Vector cur = v;
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < steps; ++i) {
      const KrylovPass pass = krylov_pass(g, cur, s / steps, opts.max_krylov, opts.tol);
      worst = std::max(worst, pass.err);
      if (!(pass.err <= opts.tol)) {
        ok = false;
        break;
      }
      cur = pass.w;
    }
    if (ok) return cur;
    if (depth == 6)
      throw KrylovStagnation("krylov_exp_apply: no convergence after subdivision", worst);
  }
  return v;  // unreachable
}

StateVector exp_apply(const Generator& gen, const StateVector& state, double s,
                      const ExpOptions& opts) {
  if (!gen.op.domain->same_layout(*state.basis))
    throw Error("exp_apply: basis mismatch");
  StateVector out;
  out.basis = state.basis;
  if (s == 0.0 || gen.op.matrix.nonZeros() == 0) {
    out.amplitudes = state.amplitudes;
    return out;
  }
  if (state.basis->dim() <= opts.dense_dim_max) {
    const DenseMatrix e = dense_expm_antihermitian(to_dense(gen.op.matrix) * s);
    out.amplitudes = e * state.amplitudes;
  } else {
    out.amplitudes = krylov_exp_apply(gen.op.matrix, state.amplitudes, s, opts);
  }
  return out;
}

ConjugationResult conjugate(const SparseOperator& op, const Generator& gen,
                            ConjugationMode mode, const ExpOptions& opts) {
  if (!op.hermitian) throw Error("conjugate: operator must be Hermitian");
  if (!op.domain->same_layout(*gen.op.domain))
    throw Error("conjugate: operator and generator bases differ");
  ConjugationResult res;
  res.mode = mode;
  res.tol = opts.tol;
  if (mode == ConjugationMode::dense) {
    if (op.domain->dim() > opts.dense_dim_max)
      throw DimensionBudgetExceeded("conjugate: dense mode beyond budget",
                                    op.domain->dim());
    DenseMatrix conj;
    if (gen.op.matrix.nonZeros() == 0) {
      conj = to_dense(op.matrix);
    } else {
      const DenseMatrix e = dense_expm_antihermitian(to_dense(gen.op.matrix));
      conj = e.adjoint() * to_dense(op.matrix) * e;
    }
    res.hermiticity_drift = (conj - conj.adjoint()).cwiseAbs().maxCoeff();
    if (res.hermiticity_drift > 1e-10 * std::max(1.0, conj.cwiseAbs().maxCoeff()))
      throw Error("conjugate: hermiticity drift beyond tolerance");
    res.dense = conj;
    res.quadratic_form = [m = res.dense.value()](const StateVector& xi) {
      return (xi.amplitudes.dot(m * xi.amplitudes)).real();
    };
  } else {
    // quadratic-form evaluator; each call runs its own Krylov workspace
    const SparseMatrix gm = gen.op.matrix;
    const SparseMatrix om = op.matrix;
    const ExpOptions o = opts;
    res.quadratic_form = [gm, om, o](const StateVector& xi) {
      Vector u = (gm.nonZeros() == 0) ? xi.amplitudes
                                      : krylov_exp_apply(gm, xi.amplitudes, 1.0, o);
      return (u.dot(om * u)).real();
    };
  }
  return res;
}

}  // namespace gpbose
