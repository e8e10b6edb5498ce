#include "gpbose/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "gpbose/errors.hpp"

namespace gpbose {

namespace {

Vector random_start(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(static_cast<long>(dim));
  for (long i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  v.normalize();
  return v;
}

void project_out(Vector& w, const std::vector<Vector>& basis) {
  for (const auto& q : basis) w -= q.dot(w) * q;
}

// One deflated Lanczos run targeting the smallest eigenvalue in the
// complement of `locked`.
struct LanczosOut {
  double value;
  Vector vector;
  double residual;
};

LanczosOut lanczos_smallest(const Matvec& matvec, std::size_t dim,
                            const std::vector<Vector>& locked, const EigOptions& opts,
                            std::mt19937_64& rng) {
  const long n = static_cast<long>(dim);
  if (locked.size() >= dim) throw Error("lanczos: subspace exhausted");

  Vector v = random_start(dim, rng);
  project_out(v, locked);
  double nv = v.norm();
  if (nv < 1e-12) {
    v = random_start(dim, rng);
    project_out(v, locked);
    nv = v.norm();
  }
  v /= nv;

  std::vector<Vector> basis{v};
  std::vector<double> alpha, beta;
  Vector w(n);

  const int max_m = std::min<long>(opts.max_iter, n - static_cast<long>(locked.size()));
  auto ritz_smallest = [&](int m, Eigen::VectorXd* svec) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    if (svec) *svec = es.eigenvectors().col(0);
    return es.eigenvalues()(0);
  };

  double theta = 0.0;
  for (int j = 0; j < max_m; ++j) {
    matvec(basis.back(), w);
    project_out(w, locked);
    const double a = basis.back().dot(w).real();
    alpha.push_back(a);
    w -= a * basis.back();
    if (j > 0) w -= beta.back() * basis[basis.size() - 2];
    project_out(w, basis);  // full reorthogonalization
    project_out(w, basis);
    const double b = w.norm();

    const int m = j + 1;
    const bool check_now = (b < 1e-13) || (m % 8 == 0) || (m == max_m);
    if (check_now) {
      Eigen::VectorXd s;
      theta = ritz_smallest(m, &s);
      const double est = (b < 1e-13) ? 0.0 : b * std::abs(s(m - 1));
      if (est <= 0.5 * opts.tol * std::max(1.0, std::abs(theta)) || b < 1e-13 ||
          m == max_m) {
        Vector x = Vector::Zero(n);
        for (int i = 0; i < m; ++i) x += s(i) * basis[static_cast<std::size_t>(i)];
        project_out(x, locked);
        x.normalize();
        Vector ax(n);
        matvec(x, ax);
        const double val = x.dot(ax).real();
        const double res = (ax - val * x).norm();
        if (res <= opts.tol * std::max(1.0, std::abs(val)) || b < 1e-13)
          return {val, x, res};
        if (m == max_m)
          throw NoConvergence("lanczos: residual above tolerance at max_iter", res);
      }
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw NoConvergence("lanczos: iteration limit reached", theta);
}

}  // namespace

EigResult eigs_smallest(const Matvec& matvec, std::size_t dim, const EigOptions& opts) {
  if (opts.k < 1 || static_cast<std::size_t>(opts.k) > dim)
    throw ConfigError("eigs_smallest: bad k");
  std::mt19937_64 rng(opts.seed);
  EigResult out;
  std::vector<Vector> locked;
  for (int j = 0; j < opts.k; ++j) {
    LanczosOut one = lanczos_smallest(matvec, dim, locked, opts, rng);
    out.values.push_back(one.value);
    out.residuals.push_back(one.residual);
    locked.push_back(one.vector);
  }
  // deflation returns values in ascending order up to degeneracy jitter
  for (std::size_t i = 0; i + 1 < out.values.size(); ++i)
    if (std::abs(out.values[i + 1] - out.values[i]) < 10.0 * opts.tol)
      out.degeneracy_warning = true;
  // sort pairs ascending for a stable contract
  std::vector<std::size_t> order(out.values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.values[a] < out.values[b]; });
  EigResult sorted;
  sorted.degeneracy_warning = out.degeneracy_warning;
  for (std::size_t i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.vectors.push_back(locked[i]);
    sorted.residuals.push_back(out.residuals[i]);
  }
  return sorted;
}

EigResult eigs_smallest(const SparseOperator& op, const EigOptions& opts) {
  const SparseMatrix& m = op.matrix;
  return eigs_smallest([&m](const Vector& x, Vector& y) { y = m * x; },
                       static_cast<std::size_t>(m.rows()), opts);
}

EigResult eigs_smallest(const DenseMatrix& m, const EigOptions& opts) {
  return eigs_smallest([&m](const Vector& x, Vector& y) { y = m * x; },
                       static_cast<std::size_t>(m.rows()), opts);
}

double lambda_min(const SparseOperator& op, std::uint64_t seed, double tol) {
  EigOptions o;
  o.k = 1;
  o.tol = tol;
  o.seed = seed;
  return eigs_smallest(op, o).values[0];
}

double lambda_min(const DenseMatrix& m, std::uint64_t seed, double tol) {
  EigOptions o;
  o.k = 1;
  o.tol = tol;
  o.seed = seed;
  return eigs_smallest(m, o).values[0];
}

double lambda_max(const SparseOperator& op, std::uint64_t seed, double tol) {
  const SparseMatrix& m = op.matrix;
  EigOptions o;
  o.k = 1;
  o.tol = tol;
  o.seed = seed;
  const auto r = eigs_smallest(
      [&m](const Vector& x, Vector& y) { y = -(m * x); },
      static_cast<std::size_t>(m.rows()), o);
  return -r.values[0];
}

double lambda_max(const DenseMatrix& m, std::uint64_t seed, double tol) {
  EigOptions o;
  o.k = 1;
  o.tol = tol;
  o.seed = seed;
  const DenseMatrix neg = -m;
  return -eigs_smallest(neg, o).values[0];
}

double spectral_norm_hermitian(const SparseMatrix& m, std::uint64_t seed) {
  if (m.nonZeros() == 0) return 0.0;
  SparseOperator tmp;
  tmp.matrix = m;
  // largest magnitude eigenvalue of a Hermitian matrix
  EigOptions o;
  o.k = 1;
  o.seed = seed;
  const auto lo = eigs_smallest(
      [&m](const Vector& x, Vector& y) { y = m * x; }, static_cast<std::size_t>(m.rows()), o);
  const auto hi = eigs_smallest(
      [&m](const Vector& x, Vector& y) { y = -(m * x); }, static_cast<std::size_t>(m.rows()), o);
  return std::max(std::abs(lo.values[0]), std::abs(hi.values[0]));
}

}  // namespace gpbose
