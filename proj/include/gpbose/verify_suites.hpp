#pragma once

#include "gpbose/bounds.hpp"
#include "gpbose/config.hpp"
#include "gpbose/spectra.hpp"

namespace gpbose {

struct SuiteResult {
  std::vector<BoundReport> reports;
  bool pass = true;

  void absorb(const SuiteResult& other);
  std::string to_json() const;
};

// Exact operator algebra: condensate-map rules, generalized commutators,
// the excitation-map identity L = U H U^dag, and basis determinism.
SuiteResult run_algebra_suite(const RunConfig& cfg);

// Conjugation machinery: unitarity, Krylov-vs-dense agreement, hyperbolic
// action and remainder scaling, series convergence, growth constants.
SuiteResult run_renorm_suite(const RunConfig& cfg);

// Operator inequalities: theta and R fitted constants with N-stability,
// the localization identity and its M^-2 scaling, variational checks.
SuiteResult run_bounds_suite(const RunConfig& cfg);

SuiteResult run_all_suites(const RunConfig& cfg);

// helpers shared with tests
SparseOperator l_total(const LPieces& l);
StateVector random_state(const BasisPtr& basis, std::uint64_t seed,
                         int max_excitation = -1);
std::vector<double> dense_spectrum(const DenseMatrix& m);

}  // namespace gpbose
