#pragma once

#include <map>
#include <string>

#include "gpbose/expm.hpp"
#include "gpbose/hamiltonian.hpp"
#include "gpbose/lanczos.hpp"
#include "gpbose/partition.hpp"

namespace gpbose {

//! Bisection certificate for a fitted constant: lambda_min is negative below
//! c_low and admissible at c_high.
struct BracketCertificate {
  double c_low = 0.0;
  double c_high = 0.0;
  double lambda_at_low = 0.0;
  double lambda_at_high = 0.0;
};

struct BoundReport {
  std::string name;
  std::map<std::string, double> parameters;
  std::map<std::string, double> fitted_constants;
  std::map<std::string, double> residuals;
  std::map<std::string, double> slope_estimates;
  std::map<std::string, BracketCertificate> brackets;
  std::string verdict;  // exact_pass | fitted_pass | fail
  long samples_used = 0;
  std::vector<std::string> warnings;

  std::string to_json() const;  // deterministic (sorted keys, shortest doubles)
};

// Smallest C >= 0 making lambda_min_at(C) >= -tol_neg, by bracket doubling
// and bisection; lambda_min_at must be nondecreasing in C.
struct FitResult {
  double c = 0.0;
  BracketCertificate cert;
  bool ok = false;
};
FitResult fit_smallest_constant(const std::function<double(double)>& lambda_min_at,
                                double tol_neg = 1e-10, double rel = 0.02);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ThetaBoundInputs {
  SparseOperator l_total;  // excitation Hamiltonian L
  Generator b_gen;         // quadratic generator (may be zero)
  SparseOperator h_n;      // K + V_N on the same basis
  double a0 = 0.0;
  int n_particles = 0;
  double ell = 0.25;
  double alpha = 3.5;
  std::vector<double> delta_grid{0.25, 0.5, 1.0};
  std::uint64_t seed = 1234;
  std::size_t dense_dim_max = 2000;
};

// theta = e^{-B} L e^{B} - 4 pi a0 N - H_N; fits, for each delta, the
// smallest C with  +-theta <= delta H_N + C ell^-alpha (N_+ + 1),  plus the
// one-sided variant  theta >= -delta H_N - C N_+ - C ell^-alpha.
BoundReport verify_theta_bound(const ThetaBoundInputs& in);

// Exact localization identity
//   G = f_M G f_M + g_M G g_M + (1/2)([f_M,[f_M,G]] + [g_M,[g_M,G]])
// checked entrywise per M, plus the M^-2 scaling of the double commutator
// and the fitted constant of its (H_N + 1)-relative bound.
BoundReport verify_localization(const SparseOperator& g_op, const SparseOperator& h_n,
                                const SmoothPartition& part,
                                const std::vector<int>& m_list, double ell,
                                double alpha, std::uint64_t seed = 1234);

struct RBoundInputs {
  SparseOperator g_eff;
  Generator a_gen;
  SparseOperator h_n;
  double a0 = 0.0;
  int n_particles = 0;
  double ell = 0.25;
  double alpha = 3.5;
  double beta = 2.0;
  std::uint64_t seed = 1234;
  std::size_t dense_dim_max = 2000;
};

// R = e^{-A} G_eff e^{A}; fits the smallest C with
//   R >= 4 pi a0 N + (1 - C ell^kappa) H_N - C ell^-3alpha N_+^2/N - C ell^-3alpha
// at kappa = min(alpha-3, beta-alpha/2, 2alpha-3beta, (alpha-beta)/4).
BoundReport verify_r_lower_bound(const RBoundInputs& in);

// Growth constants C(k) = lambda_max((N_++1)^{-k/2} e^{-G} (N_++1)^k e^{G}
// (N_++1)^{-k/2}) for each k.
BoundReport verify_ngrow(const Generator& gen, const std::vector<int>& k_list,
                         std::uint64_t seed = 1234,
                         std::size_t dense_dim_max = 2000);

}  // namespace gpbose
