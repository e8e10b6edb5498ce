#include "gpbose/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "gpbose/errors.hpp"

namespace gpbose {

namespace {

std::string dkey(const char* prefix, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%g", prefix, v);
  return std::string(buf);
}

nlohmann::json cert_json(const BracketCertificate& c) {
  return nlohmann::json{{"c_low", c.c_low},
                        {"c_high", c.c_high},
                        {"lambda_at_low", c.lambda_at_low},
                        {"lambda_at_high", c.lambda_at_high}};
}

// lambda_min of a Hermitian matvec composition
double lambda_min_of(const Matvec& mv, std::size_t dim, std::uint64_t seed) {
  EigOptions o;
  o.k = 1;
  o.tol = 1e-10;
  o.max_iter = 600;
  o.seed = seed;
  return eigs_smallest(mv, dim, o).values[0];
}

}  // namespace

std::string BoundReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["parameters"] = parameters;
  j["fitted_constants"] = fitted_constants;
  j["residuals"] = residuals;
  j["slope_estimates"] = slope_estimates;
  nlohmann::json bj = nlohmann::json::object();
  for (const auto& [k, v] : brackets) bj[k] = cert_json(v);
  j["brackets"] = bj;
  j["verdict"] = verdict;
  j["samples_used"] = samples_used;
  j["warnings"] = warnings;
  return j.dump(2);
}

FitResult fit_smallest_constant(const std::function<double(double)>& lambda_min_at,
                                double tol_neg, double rel) {
  FitResult out;
  const double at0 = lambda_min_at(0.0);
  if (at0 >= -tol_neg) {
    out.c = 0.0;
    out.cert = {0.0, 0.0, at0, at0};
    out.ok = true;
    return out;
  }
  double lo = 0.0, lo_val = at0;
  double hi = 1.0, hi_val = lambda_min_at(hi);
  while (hi_val < -tol_neg) {
    lo = hi;
    lo_val = hi_val;
    hi *= 4.0;
    if (hi > 1e14) {
      out.cert = {lo, hi, lo_val, hi_val};
      return out;  // not ok
    }
    hi_val = lambda_min_at(hi);
  }
  while (hi - lo > rel * std::max(hi, 1e-12)) {
    const double mid = 0.5 * (lo + hi);
    const double v = lambda_min_at(mid);
    if (v < -tol_neg) {
      lo = mid;
      lo_val = v;
    } else {
      hi = mid;
      hi_val = v;
    }
  }
  out.c = hi;
  out.cert = {lo, hi, lo_val, hi_val};
  out.ok = true;
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BoundReport verify_theta_bound(const ThetaBoundInputs& in) {
  BoundReport rep;
  rep.name = "theta_bound";
  rep.parameters = {{"N", static_cast<double>(in.n_particles)},
                    {"ell", in.ell},
                    {"alpha", in.alpha},
                    {"a0", in.a0}};

  const std::size_t dim = in.l_total.domain->dim();
  const double shift = 4.0 * M_PI * in.a0 * in.n_particles;
  const double ell_ma = std::pow(in.ell, -in.alpha);
  const SparseOperator n_plus = n_plus_operator(in.l_total.domain);

  // theta as either a sparse matrix (trivial generator) or a dense one
  SparseMatrix theta_sparse;
  DenseMatrix theta_dense;
  const bool dense_mode = in.b_gen.op.matrix.nonZeros() != 0;
  if (dense_mode) {
    if (dim > in.dense_dim_max)
      throw DimensionBudgetExceeded("verify_theta_bound: dense conjugation beyond budget",
                                    dim);
    ConjugationResult conj = conjugate(in.l_total, in.b_gen, ConjugationMode::dense);
    theta_dense = std::move(conj.dense.value());
    theta_dense -= to_dense(in.h_n.matrix);
    for (long i = 0; i < theta_dense.rows(); ++i) theta_dense(i, i) -= shift;
  } else {
    SparseMatrix id(static_cast<long>(dim), static_cast<long>(dim));
    id.setIdentity();
    theta_sparse = in.l_total.matrix - in.h_n.matrix - SparseMatrix(shift * id);
  }

  const SparseMatrix& h = in.h_n.matrix;
  const SparseMatrix& np = n_plus.matrix;
  auto combo_lambda_min = [&](double delta, double c_weight_npp1, double c_weight_np,
                              double c_abs, double theta_sign) {
    Matvec mv = [&, delta, c_weight_npp1, c_weight_np, c_abs, theta_sign](
                    const Vector& x, Vector& y) {
      y = delta * (h * x);
      if (c_weight_npp1 != 0.0) y += c_weight_npp1 * (np * x) + c_weight_npp1 * x;
      if (c_weight_np != 0.0) y += c_weight_np * (np * x);
      if (c_abs != 0.0) y += c_abs * x;
      if (dense_mode)
        y += theta_sign * (theta_dense * x);
      else
        y += theta_sign * (theta_sparse * x);
    };
    return lambda_min_of(mv, dim, in.seed);
  };

  rep.samples_used = static_cast<long>(in.delta_grid.size());
  bool all_ok = true;
  for (double delta : in.delta_grid) {
    // +-theta <= delta H + C ell^-alpha (N_+ + 1)
    const FitResult plus = fit_smallest_constant([&](double c) {
      return combo_lambda_min(delta, c * ell_ma, 0.0, 0.0, +1.0);
    });
    const FitResult minus = fit_smallest_constant([&](double c) {
      return combo_lambda_min(delta, c * ell_ma, 0.0, 0.0, -1.0);
    });
    // theta >= -delta H - C N_+ - C ell^-alpha
    const FitResult onesided = fit_smallest_constant([&](double c) {
      return combo_lambda_min(delta, 0.0, c, c * ell_ma, +1.0);
    });
    all_ok = all_ok && plus.ok && minus.ok && onesided.ok;
    const double c_two = std::max(plus.c, minus.c);
    rep.fitted_constants[dkey("C_delta_", delta)] = c_two;
    rep.fitted_constants[dkey("C_onesided_delta_", delta)] = onesided.c;
    rep.brackets[dkey("C_plus_delta_", delta)] = plus.cert;
    rep.brackets[dkey("C_minus_delta_", delta)] = minus.cert;
    rep.brackets[dkey("C_onesided_delta_", delta)] = onesided.cert;
  }
  rep.verdict = all_ok ? "fitted_pass" : "fail";
  return rep;
}

BoundReport verify_localization(const SparseOperator& g_op, const SparseOperator& h_n,
                                const SmoothPartition& part,
                                const std::vector<int>& m_list, double ell,
                                double alpha, std::uint64_t seed) {
  BoundReport rep;
  rep.name = "localization";
  rep.parameters = {{"ell", ell},
                    {"alpha", alpha},
                    {"width", part.width()},
                    {"fprime_sup", part.fprime_sup()}};

  const BasisPtr basis = g_op.domain;
  const int n = basis->n_max();
  if (part.partition_defect(n) > 1e-12)
    throw PartitionViolation("verify_localization: f^2 + g^2 deviates from 1 on 0..N");

  const double g_scale = std::max(1.0, max_abs_entry(g_op.matrix));
  const double ell_a2 = std::pow(ell, -alpha / 2.0);
  const double fp2 = part.fprime_sup() * part.fprime_sup();

  std::vector<double> ms, mags;
  bool exact_ok = true;
  bool fits_ok = true;
  for (int m : m_list) {
    const SparseOperator fm = partition_f(basis, part, m);
    const SparseOperator gm = partition_g(basis, part, m);
    const SparseOperator ff = multiply(multiply(fm, g_op), fm);
    const SparseOperator gg = multiply(multiply(gm, g_op), gm);
    const SparseOperator dcf = commutator(fm, commutator(fm, g_op));
    const SparseOperator dcg = commutator(gm, commutator(gm, g_op));
    SparseMatrix recon =
        ff.matrix + gg.matrix + 0.5 * (dcf.matrix + dcg.matrix);
    const double res = max_abs_diff(recon, g_op.matrix);
    rep.residuals[dkey("identity_M_", m)] = res;
    if (res > 1e-10 * g_scale) exact_ok = false;

    const double mag = spectral_norm_hermitian(dcf.matrix, seed);
    rep.residuals[dkey("double_comm_norm_M_", m)] = mag;
    ms.push_back(static_cast<double>(m));
    mags.push_back(std::max(mag, 1e-300));

    // fitted C in  +-[f,[f,G]] <= C ell^{-a/2} M^{-2} ||f'||^2 (H_N + 1)
    const double weight = ell_a2 * fp2 / (static_cast<double>(m) * m);
    const SparseMatrix& hm = h_n.matrix;
    const SparseMatrix& dm = dcf.matrix;
    for (double sign : {+1.0, -1.0}) {
      const FitResult fit = fit_smallest_constant([&](double c) {
        Matvec mv = [&, c, sign](const Vector& x, Vector& y) {
          y = (c * weight) * (hm * x) + (c * weight) * x + sign * (dm * x);
        };
        return lambda_min_of(mv, basis->dim(), seed);
      });
      fits_ok = fits_ok && fit.ok;
      const std::string key =
          dkey(sign > 0 ? "C_comm_plus_M_" : "C_comm_minus_M_", m);
      rep.fitted_constants[key] = fit.c;
      rep.brackets[key] = fit.cert;
    }
  }
  rep.slope_estimates["double_comm_vs_M"] = loglog_slope(ms, mags);
  rep.samples_used = static_cast<long>(m_list.size());
  rep.verdict = exact_ok ? "exact_pass" : "fail";
  if (!fits_ok) rep.verdict = "fail";
  return rep;
}

BoundReport verify_r_lower_bound(const RBoundInputs& in) {
  if (!(in.alpha > 3.0 && in.alpha / 2.0 < in.beta && in.beta < 2.0 * in.alpha / 3.0))
    throw ConfigError("verify_r_lower_bound: need alpha > 3 and alpha/2 < beta < 2 alpha/3");
  const double kappa = std::min(std::min(in.alpha - 3.0, in.beta - in.alpha / 2.0),
                                std::min(2.0 * in.alpha - 3.0 * in.beta,
                                         (in.alpha - in.beta) / 4.0));

  BoundReport rep;
  rep.name = "r_lower_bound";
  rep.parameters = {{"N", static_cast<double>(in.n_particles)}, {"ell", in.ell},
                    {"alpha", in.alpha},  {"beta", in.beta},
                    {"kappa", kappa},     {"a0", in.a0}};
  for (const auto& w : in.a_gen.warnings) rep.warnings.push_back(w);

  const std::size_t dim = in.g_eff.domain->dim();
  const double shift = 4.0 * M_PI * in.a0 * in.n_particles;
  const double ell_k = std::pow(in.ell, kappa);
  const double ell_m3a = std::pow(in.ell, -3.0 * in.alpha);
  const SparseOperator n_plus = n_plus_operator(in.g_eff.domain);

  SparseMatrix r_sparse;
  DenseMatrix r_dense;
  const bool dense_mode = in.a_gen.op.matrix.nonZeros() != 0;
  if (dense_mode) {
    if (dim > in.dense_dim_max)
      throw DimensionBudgetExceeded("verify_r_lower_bound: dense conjugation beyond budget",
                                    dim);
    ConjugationResult conj = conjugate(in.g_eff, in.a_gen, ConjugationMode::dense);
    r_dense = std::move(conj.dense.value());
  } else {
    r_sparse = in.g_eff.matrix;
  }

  const SparseMatrix& h = in.h_n.matrix;
  const SparseMatrix& np = n_plus.matrix;
  const double inv_n = 1.0 / in.n_particles;
  auto lam = [&](double c) {
    Matvec mv = [&, c](const Vector& x, Vector& y) {
      if (dense_mode)
        y = r_dense * x;
      else
        y = r_sparse * x;
      y -= shift * x;
      y -= (1.0 - c * ell_k) * (h * x);
      if (c != 0.0) {
        y += (c * ell_m3a * inv_n) * (np * (np * x));
        y += (c * ell_m3a) * x;
      }
    };
    return lambda_min_of(mv, dim, in.seed);
  };

  const FitResult fit = fit_smallest_constant(lam);
  rep.fitted_constants["C"] = fit.c;
  rep.brackets["C"] = fit.cert;
  rep.samples_used = 1;
  rep.verdict = fit.ok ? "fitted_pass" : "fail";
  return rep;
}

BoundReport verify_ngrow(const Generator& gen, const std::vector<int>& k_list,
                         std::uint64_t seed, std::size_t dense_dim_max) {
  BoundReport rep;
  rep.name = "ngrow";
  const BasisPtr basis = gen.op.domain;
  rep.parameters = {{"N", static_cast<double>(basis->n_max())},
                    {"eta_l2", gen.eta_l2},
                    {"kind", gen.kind == Generator::Kind::quadratic_b ? 0.0 : 1.0}};
  const std::size_t dim = basis->dim();

  Vector dvals(static_cast<long>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    dvals(static_cast<long>(i)) = Complex(basis->excitation_count(i) + 1.0, 0.0);

  const bool trivial = gen.op.matrix.nonZeros() == 0;
  for (int k : k_list) {
    double c;
    if (trivial) {
      c = 1.0;
    } else if (dim <= dense_dim_max) {
      const DenseMatrix e = dense_expm_antihermitian(to_dense(gen.op.matrix));
      DenseMatrix dke = e;  // D^k e^{G}
      for (long i = 0; i < dke.rows(); ++i)
        dke.row(i) *= std::pow(dvals(i).real(), k);
      DenseMatrix m = e.adjoint() * dke;  // e^{-G} D^k e^{G}
      for (long i = 0; i < m.rows(); ++i) {
        const double wi = std::pow(dvals(i).real(), -0.5 * k);
        m.row(i) *= wi;
        m.col(i) *= wi;
      }
      c = lambda_max(m, seed);
    } else {
      const SparseMatrix& g = gen.op.matrix;
      Matvec mv = [&, k](const Vector& x, Vector& y) {
        Vector t = x;
        for (long i = 0; i < t.size(); ++i) t(i) *= std::pow(dvals(i).real(), -0.5 * k);
        t = krylov_exp_apply(g, t, 1.0);
        for (long i = 0; i < t.size(); ++i) t(i) *= std::pow(dvals(i).real(), k);
        t = krylov_exp_apply(g, t, -1.0);
        for (long i = 0; i < t.size(); ++i) t(i) *= std::pow(dvals(i).real(), -0.5 * k);
        y = t;
      };
      EigOptions o;
      o.k = 1;
      o.seed = seed;
      const auto r = eigs_smallest(
          [&](const Vector& x, Vector& y) {
            mv(x, y);
            y = -y;
          },
          dim, o);
      c = -r.values[0];
    }
    rep.fitted_constants[dkey("C_k_", k)] = c;
  }
  rep.samples_used = static_cast<long>(k_list.size());
  rep.verdict = "fitted_pass";
  return rep;
}

}  // namespace gpbose
