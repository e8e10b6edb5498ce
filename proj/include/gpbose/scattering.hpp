#pragma once

#include <unordered_map>
#include <vector>

#include "gpbose/lattice.hpp"
#include "gpbose/potential.hpp"

namespace gpbose {

//! Radial profile m(r) = r f(r) sampled on the integrator's grid, with
//! derivative values for C1 cubic-Hermite evaluation in between.
struct RadialProfile {
  std::vector<double> r, m, mp;

  double eval_m(double rr) const;
  double eval_mp(double rr) const;
};

//! Ground state of the Neumann problem (-Delta + V/2) f = lambda f on the
//! ball of radius N*ell, normalized to f = 1, f' = 0 at the boundary.
struct ScatteringSolution {
  int n_particles = 0;
  double ell = 0.0;
  double lambda_ell = 0.0;
  double a0 = 0.0;  // scattering length of the unscaled potential
  Potential potential;

  RadialProfile profile;                  // m(r) on (0, N*ell]
  std::vector<double> r_grid, f_samples, w_samples;

  double domain_radius() const { return n_particles * ell; }
  double f(double r) const;  // removable singularity at r = 0 filled by m'(0)
  double w(double r) const { return 1.0 - f(r); }
};

// Scattering length of the unscaled potential from the zero-energy problem
//   -m'' + (V/2) m = 0,  m(0) = 0, m'(0) = 1,
// integrated to the edge of the support: a0 = R0 - m(R0)/m'(R0).
double zero_energy_scattering(const Potential& pot);

// Smallest Neumann eigenvalue by shooting on lambda with bisection over the
// boundary residual m'(L)*L - m(L); the bracket upper end comes from the
// 3*a0/L^3 asymptotic scale.
ScatteringSolution solve_neumann(const Potential& pot, int n_particles, double ell);

// 4 pi \int r^2 V(r) f_l(r) dr on the solution's grid; approaches 8 pi a0.
double integral_vf(const ScatteringSolution& sol);

// eta at a single radial momentum |p| (the kernel is radial):
//   eta_p = -4 pi N \int_0^ell x^2 w_l(N x) sinc(|p| x) dx
double eta_radial(const ScatteringSolution& sol, double p_abs);

//! Correlation kernel eta on a finite symmetric mode set, plus its
//! high-momentum restriction eta_H on P_H = {|p| >= ell^-alpha}.
struct EtaCoefficients {
  std::vector<Mode> modes;
  std::unordered_map<Mode, double, ModeHash> eta;
  std::unordered_map<Mode, double, ModeHash> eta_h;
  double eta0 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double l2_norm_eta = 0.0;
  double l2_norm_eta_h = 0.0;

  double high_cutoff(double ell) const { return std::pow(ell, -alpha); }
  double low_cutoff(double ell) const { return std::pow(ell, -beta); }
};

EtaCoefficients eta_coefficients(const ScatteringSolution& sol,
                                 const std::vector<Mode>& modes, double alpha,
                                 double beta);

// Relative residual of the radial scattering equation
//   -m'' + (V/2) m = lambda m
// measured with second-order central differences on a fixed-step
// re-integration with points_per_piece nodes in each smooth piece
// (the residual is relative to the max magnitude of the equation's terms).
double verify_scattering_relation(const ScatteringSolution& sol,
                                  int points_per_piece = 2048);

}  // namespace gpbose
