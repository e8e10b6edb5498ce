#pragma once

#include <stdexcept>
#include <string>

namespace gpbose {

// Error taxonomy shared by all modules. Every failure mode that callers are
// expected to handle gets its own type; the CLI maps them to exit codes.

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
  using Error::Error;
};

struct QuadratureFailure : Error {
  using Error::Error;
};

struct UnphysicalSolution : Error {
  using Error::Error;
};

struct EigenvalueBracketFailure : Error {
  using Error::Error;
};

struct AsymmetricModeSet : Error {
  using Error::Error;
};

struct DimensionBudgetExceeded : Error {
  std::size_t requested_dim;
  DimensionBudgetExceeded(const std::string& msg, std::size_t dim)
      : Error(msg), requested_dim(dim) {}
};

struct UnknownMode : Error {
  using Error::Error;
};

struct WrongSector : Error {
  using Error::Error;
};

struct ModeMismatch : Error {
  using Error::Error;
};

struct UnsupportedMode : Error {
  using Error::Error;
};

struct EmptyCutoffSet : Error {
  using Error::Error;
};

struct KrylovStagnation : Error {
  double achieved_residual;
  KrylovStagnation(const std::string& msg, double res)
      : Error(msg), achieved_residual(res) {}
};

struct ConvergenceGuard : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  double best_residual;
  NoConvergence(const std::string& msg, double res)
      : Error(msg), best_residual(res) {}
};

struct PartitionViolation : Error {
  using Error::Error;
};

struct EmptyWindow : Error {
  using Error::Error;
};

}  // namespace gpbose
