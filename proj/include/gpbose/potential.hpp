#pragma once

#include <functional>
#include <vector>

namespace gpbose {

//! Radial, compactly supported, pointwise non-negative interaction profile.
//!
//! Two flavours: an analytic square well and a tabulated profile with
//! piecewise-cubic interpolation between nodes. All radii are in the unscaled
//! units of the two-body problem; scaling to the torus happens at the point
//! of use (the Hamiltonian evaluates the Fourier transform at r/N).
class Potential {
 public:
  enum class Kind { zero, square_well, tabulated };

  Potential() = default;  // the zero potential

  static Potential zero();
  static Potential square_well(double v0, double radius);
  static Potential tabulated(std::vector<double> r, std::vector<double> v);

  Kind kind() const { return kind_; }
  double support_radius() const { return support_radius_; }
  double v0() const { return v0_; }
  double well_radius() const { return radius_; }

  // Pointwise evaluation V(r); zero outside the support.
  double operator()(double r) const;

  // Potential rescaled as N^2 V(N r); support shrinks to R0/N.
  Potential scaled(double n) const;

  // Throws ConfigError when invariants fail (negative values, bad grids).
  void validate() const;

 private:
  Kind kind_ = Kind::zero;
  double v0_ = 0.0;
  double radius_ = 0.0;
  double support_radius_ = 0.0;
  // tabulated data and precomputed Hermite slopes
  std::vector<double> r_, v_, slope_;
};

// 3D Fourier transform of the radial potential,
//   V^(k) = 4 pi \int_0^{R0} r^2 V(r) sinc(|k| r) dr,
// by composite Gauss-Legendre quadrature with oscillation-aware panel
// splitting (panel width capped at an eighth of the sinc wavelength).
// V^(0) equals the integral of V over R^3.
double fourier_v(const Potential& pot, double k);

// Generic radial quadrature helper used by fourier_v and the eta integrals:
// integrates g over [a,b] with panels no wider than max_panel.
double radial_quadrature(const std::function<double(double)>& g, double a,
                         double b, double max_panel);

}  // namespace gpbose
