#pragma once

#include <vector>

#include "gpbose/sparse_op.hpp"

namespace gpbose {

//! Smooth partition pair (f, g) with f^2 + g^2 = 1 exactly by construction
//! (g = sqrt(1 - f^2)). f descends from 1 to 0 across [0, width] with a
//! constant slope plateau; the edges are flattened by a C-infinity bump so
//! that f' is smooth and its sup norm equals the plateau slope.
class SmoothPartition {
 public:
  explicit SmoothPartition(double width = 4.0, double edge = 0.25);

  double f(double x) const;
  double g(double x) const;
  double fprime_sup() const { return slope_; }
  double width() const { return width_; }

  // max |f^2 + g^2 - 1| over the integer lattice 0..n (PartitionViolation
  // material when above 1e-12).
  double partition_defect(int n) const;

 private:
  double width_, edge_, slope_;
  std::vector<double> table_;  // cumulative integral of the bump-flattened slope
  double table_step_;
};

// Diagonal operators f(N_+/M), g(N_+/M) on the basis.
SparseOperator partition_f(const BasisPtr& basis, const SmoothPartition& part, int m);
SparseOperator partition_g(const BasisPtr& basis, const SmoothPartition& part, int m);

}  // namespace gpbose
