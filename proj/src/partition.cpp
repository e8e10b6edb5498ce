#include "gpbose/partition.hpp"

#include <cmath>

#include "gpbose/errors.hpp"

namespace gpbose {

namespace {

// standard C-infinity step on [0, 1]
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

SmoothPartition::SmoothPartition(double width, double edge)
    : width_(width), edge_(edge) {
  if (!(width > 0.0) || !(edge > 0.0) || !(2.0 * edge < width))
    throw ConfigError("SmoothPartition: need 0 < 2*edge < width");
  // -f'(x) proportional to chi(x) = s(x/edge) s((width-x)/edge): a plateau
  // with smooth shoulders; normalize so the total drop is exactly 1.
  auto chi = [&](double x) {
    return smooth_step(x / edge_) * smooth_step((width_ - x) / edge_);
  };
  const int n = 8192;
  table_.assign(n + 1, 0.0);
  table_step_ = width_ / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {  // Simpson per subinterval
    const double x0 = i * table_step_;
    const double x1 = x0 + table_step_;
    acc += table_step_ / 6.0 * (chi(x0) + 4.0 * chi(0.5 * (x0 + x1)) + chi(x1));
    table_[static_cast<std::size_t>(i) + 1] = acc;
  }
  const double total = table_.back();
  for (auto& v : table_) v /= total;
  slope_ = 1.0 / total;  // plateau value of |f'| after normalization
}

double SmoothPartition::f(double x) const {
  if (x <= 0.0) return 1.0;
  if (x >= width_) return 0.0;
  const double pos = x / table_step_;
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos), table_.size() - 2);
  const double t = pos - static_cast<double>(i);
  const double cum = (1.0 - t) * table_[i] + t * table_[i + 1];
  return 1.0 - cum;
}

double SmoothPartition::g(double x) const {
  const double fx = f(x);
  return std::sqrt(std::max(0.0, 1.0 - fx * fx));
}

double SmoothPartition::partition_defect(int n) const {
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double fx = f(static_cast<double>(i));
    const double gx = g(static_cast<double>(i));
    worst = std::max(worst, std::abs(fx * fx + gx * gx - 1.0));
  }
  return worst;
}

SparseOperator partition_f(const BasisPtr& basis, const SmoothPartition& part, int m) {
  if (m < 1) throw ConfigError("partition_f: M >= 1 required");
  return diagonal_op(basis, [&, m](std::size_t idx) {
    return part.f(static_cast<double>(basis->excitation_count(idx)) / m);
  });
}

SparseOperator partition_g(const BasisPtr& basis, const SmoothPartition& part, int m) {
  if (m < 1) throw ConfigError("partition_g: M >= 1 required");
  return diagonal_op(basis, [&, m](std::size_t idx) {
    return part.g(static_cast<double>(basis->excitation_count(idx)) / m);
  });
}

}  // namespace gpbose
