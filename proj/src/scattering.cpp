#include "gpbose/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gpbose/errors.hpp"

namespace gpbose {

namespace {

using State = std::array<double, 2>;  // (m, m')

struct Rhs {
  const Potential& pot;
  double lambda;
  State operator()(double r, const State& y) const {
    return {y[1], (0.5 * pot(r) - lambda) * y[0]};
  }
};

// Dormand-Prince 5(4) step; returns the 5th-order result and an error estimate.
struct Dp45Step {
  State y5;
  double err;
};

Dp45Step dp45(const Rhs& f, double r, const State& y, double h) {
  auto axpy = [](const State& y, double c, const State& k) {
    return State{y[0] + c * k[0], y[1] + c * k[1]};
  };
  const State k1 = f(r, y);
  const State k2 = f(r + h / 5, axpy(y, h / 5, k1));
  State t{y[0] + h * (3.0 / 40 * k1[0] + 9.0 / 40 * k2[0]),
          y[1] + h * (3.0 / 40 * k1[1] + 9.0 / 40 * k2[1])};
  const State k3 = f(r + 3.0 / 10 * h, t);
  t = {y[0] + h * (44.0 / 45 * k1[0] - 56.0 / 15 * k2[0] + 32.0 / 9 * k3[0]),
       y[1] + h * (44.0 / 45 * k1[1] - 56.0 / 15 * k2[1] + 32.0 / 9 * k3[1])};
  const State k4 = f(r + 4.0 / 5 * h, t);
  t = {y[0] + h * (19372.0 / 6561 * k1[0] - 25360.0 / 2187 * k2[0] +
                   64448.0 / 6561 * k3[0] - 212.0 / 729 * k4[0]),
       y[1] + h * (19372.0 / 6561 * k1[1] - 25360.0 / 2187 * k2[1] +
                   64448.0 / 6561 * k3[1] - 212.0 / 729 * k4[1])};
  const State k5 = f(r + 8.0 / 9 * h, t);
  t = {y[0] + h * (9017.0 / 3168 * k1[0] - 355.0 / 33 * k2[0] + 46732.0 / 5247 * k3[0] +
                   49.0 / 176 * k4[0] - 5103.0 / 18656 * k5[0]),
       y[1] + h * (9017.0 / 3168 * k1[1] - 355.0 / 33 * k2[1] + 46732.0 / 5247 * k3[1] +
                   49.0 / 176 * k4[1] - 5103.0 / 18656 * k5[1])};
  const State k6 = f(r + h, t);
  State y5{y[0] + h * (35.0 / 384 * k1[0] + 500.0 / 1113 * k3[0] + 125.0 / 192 * k4[0] -
                       2187.0 / 6784 * k5[0] + 11.0 / 84 * k6[0]),
           y[1] + h * (35.0 / 384 * k1[1] + 500.0 / 1113 * k3[1] + 125.0 / 192 * k4[1] -
                       2187.0 / 6784 * k5[1] + 11.0 / 84 * k6[1])};
  const State k7 = f(r + h, y5);
  State y4{y[0] + h * (5179.0 / 57600 * k1[0] + 7571.0 / 16695 * k3[0] +
                       393.0 / 640 * k4[0] - 92097.0 / 339200 * k5[0] +
                       187.0 / 2100 * k6[0] + 1.0 / 40 * k7[0]),
           y[1] + h * (5179.0 / 57600 * k1[1] + 7571.0 / 16695 * k3[1] +
                       393.0 / 640 * k4[1] - 92097.0 / 339200 * k5[1] +
                       187.0 / 2100 * k6[1] + 1.0 / 40 * k7[1])};
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double sc = 1e-14 + 1e-10 * std::max(std::abs(y[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
  }
  return {y5, err};
}

// Adaptive integration over [a, b]; optionally records accepted nodes.
State integrate(const Rhs& f, State y, double a, double b, double h_max,
                RadialProfile* record) {
  double r = a;
  double h = std::min(h_max, (b - a) / 16.0);
  if (record) {
    record->r.push_back(r);
    record->m.push_back(y[0]);
    record->mp.push_back(y[1]);
  }
  while (r < b) {
    h = std::min(h, b - r);
    const auto step = dp45(f, r, y, h);
    if (step.err <= 1.0) {
      r += h;
      y = step.y5;
      if (record) {
        record->r.push_back(r);
        record->m.push_back(y[0]);
        record->mp.push_back(y[1]);
      }
      h = std::min(h_max, h * std::min(5.0, 0.9 * std::pow(std::max(step.err, 1e-10), -0.2)));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(step.err, -0.2));
    }
    if (h < 1e-15 * std::max(1.0, b)) throw Error("radial integrator step underflow");
  }
  return y;
}

// Integrate through the breakpoints {R0, L} so the well edge is a node.
State integrate_radial(const Potential& pot, double lambda, double l_end,
                       RadialProfile* record) {
  const Rhs f{pot, lambda};
  const double r0 = pot.support_radius();
  State y{0.0, 1.0};
  const double h_cap = std::max(std::min(r0 > 0 ? r0 : l_end, l_end), 1e-6) / 64.0;
  if (r0 > 0.0 && r0 < l_end) {
    y = integrate(f, y, 0.0, r0, h_cap, record);
    if (record) {  // duplicate node keeps the well edge in both pieces
      record->r.pop_back();
      record->m.pop_back();
      record->mp.pop_back();
    }
    y = integrate(f, y, r0, l_end, h_cap, record);
  } else {
    y = integrate(f, y, 0.0, std::min(l_end, r0 > 0 ? r0 : l_end), h_cap, record);
  }
  return y;
}

double cubic_hermite(double t, double h, double y0, double d0, double y1, double d1) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

double cubic_hermite_d(double t, double h, double y0, double d0, double y1, double d1) {
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * d0 +
          (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * h * d1) /
         h;
}

}  // namespace

double RadialProfile::eval_m(double rr) const {
  if (rr <= r.front()) return m.front();
  if (rr >= r.back()) return m.back();
  auto it = std::upper_bound(r.begin(), r.end(), rr);
  const std::size_t j = static_cast<std::size_t>(it - r.begin()) - 1;
  const double h = r[j + 1] - r[j];
  return cubic_hermite((rr - r[j]) / h, h, m[j], mp[j], m[j + 1], mp[j + 1]);
}

double RadialProfile::eval_mp(double rr) const {
  if (rr <= r.front()) return mp.front();
  if (rr >= r.back()) return mp.back();
  auto it = std::upper_bound(r.begin(), r.end(), rr);
  const std::size_t j = static_cast<std::size_t>(it - r.begin()) - 1;
  const double h = r[j + 1] - r[j];
  return cubic_hermite_d((rr - r[j]) / h, h, m[j], mp[j], m[j + 1], mp[j + 1]);
}

double ScatteringSolution::f(double r) const {
  if (r <= 0.0) return profile.mp.front();
  if (r >= domain_radius()) return 1.0;
  return profile.eval_m(r) / r;
}

double zero_energy_scattering(const Potential& pot) {
  pot.validate();
  const double r0 = pot.support_radius();
  if (r0 <= 0.0) return 0.0;
  const Rhs f{pot, 0.0};
  const State y = integrate(f, State{0.0, 1.0}, 0.0, r0, r0 / 64.0, nullptr);
  if (!(y[1] > 0.0))
    throw UnphysicalSolution("zero-energy solution has m'(R0) <= 0; V >= 0 forbids this");
  return r0 - y[0] / y[1];
}

ScatteringSolution solve_neumann(const Potential& pot, int n_particles, double ell) {
  pot.validate();
  if (n_particles < 2) throw ConfigError("solve_neumann: need N >= 2");
  if (!(ell > 0.0 && ell < 0.5)) throw ConfigError("solve_neumann: need 0 < ell < 1/2");
  const double l_end = n_particles * ell;
  if (!(l_end > pot.support_radius()))
    throw ConfigError("solve_neumann: need N*ell > support radius of V");

  ScatteringSolution sol;
  sol.n_particles = n_particles;
  sol.ell = ell;
  sol.potential = pot;

  const bool trivial = (pot.support_radius() <= 0.0) || (fourier_v(pot, 0.0) == 0.0);
  if (trivial) {
    sol.a0 = 0.0;
    sol.lambda_ell = 0.0;
    const int n = 257;
    for (int i = 0; i < n; ++i) {
      const double r = l_end * i / (n - 1);
      sol.profile.r.push_back(r);
      sol.profile.m.push_back(r);
      sol.profile.mp.push_back(1.0);
    }
  } else {
    sol.a0 = zero_energy_scattering(pot);
    // Neumann boundary residual; its first zero in lambda is the ground state.
    auto residual = [&](double lambda) {
      const State y = integrate_radial(pot, lambda, l_end, nullptr);
      return y[1] * l_end - y[0];
    };
    double lo = 0.0, hi = 10.0 * 3.0 * sol.a0 / (l_end * l_end * l_end);
    const double g_lo = residual(lo);
    const double g_hi = residual(hi);
    if (!(g_lo > 0.0) || !(g_hi < 0.0))
      throw EigenvalueBracketFailure(
          "solve_neumann: no sign change of the Neumann residual in (0, 30*a0/L^3]");
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    sol.lambda_ell = 0.5 * (lo + hi);
    integrate_radial(pot, sol.lambda_ell, l_end, &sol.profile);
    const double scale = l_end / sol.profile.m.back();
    for (auto& v : sol.profile.m) v *= scale;
    for (auto& v : sol.profile.mp) v *= scale;
  }

  sol.r_grid = sol.profile.r;
  sol.f_samples.resize(sol.r_grid.size());
  sol.w_samples.resize(sol.r_grid.size());
  for (std::size_t i = 0; i < sol.r_grid.size(); ++i) {
    const double r = sol.r_grid[i];
    sol.f_samples[i] = (r == 0.0) ? sol.profile.mp.front() : sol.profile.m[i] / r;
    sol.w_samples[i] = 1.0 - sol.f_samples[i];
  }
  return sol;
}

double integral_vf(const ScatteringSolution& sol) {
  const double r0 = sol.potential.support_radius();
  if (r0 <= 0.0) return 0.0;
  auto integrand = [&](double r) { return r * r * sol.potential(r) * sol.f(r); };
  const double val = 4.0 * M_PI * radial_quadrature(integrand, 0.0, r0, r0 / 64.0);
  if (!std::isfinite(val)) throw QuadratureFailure("integral_vf: non-finite result");
  return val;
}

double eta_radial(const ScatteringSolution& sol, double p_abs) {
  const double l_end = sol.domain_radius();
  const double n = sol.n_particles;
  // eta_p = -4 pi N int_0^ell x^2 w(N x) sinc(|p| x) dx, substituted to r = N x.
  auto integrand = [&](double r) {
    const double kr = p_abs * r / n;
    const double sinc = (kr < 1e-8) ? 1.0 - kr * kr / 6.0 : std::sin(kr) / kr;
    return (r * r - r * sol.profile.eval_m(r)) * sinc;
  };
  double max_panel = l_end / 64.0;
  if (p_abs > 0.0) max_panel = std::min(max_panel, 2.0 * M_PI * n / p_abs / 8.0);
  const double r0 = std::min(sol.potential.support_radius(), l_end);
  double acc = 0.0;
  if (r0 > 0.0) acc += radial_quadrature(integrand, 0.0, r0, max_panel);
  acc += radial_quadrature(integrand, r0, l_end, max_panel);
  const double val = -4.0 * M_PI / (n * n) * acc;
  if (!std::isfinite(val)) throw QuadratureFailure("eta_radial: non-finite result");
  return val;
}

EtaCoefficients eta_coefficients(const ScatteringSolution& sol,
                                 const std::vector<Mode>& modes, double alpha,
                                 double beta) {
  if (!is_symmetric(modes)) throw AsymmetricModeSet("eta_coefficients: mode set not symmetric");
  for (const auto& k : modes)
    if (k.is_zero()) throw AsymmetricModeSet("eta_coefficients: zero mode not allowed");
  if (!(alpha > beta && beta > 0.0))
    throw ConfigError("eta_coefficients: need alpha > beta > 0");

  EtaCoefficients out;
  out.modes = modes;
  out.alpha = alpha;
  out.beta = beta;
  out.eta0 = eta_radial(sol, 0.0);

  // The kernel is radial; evaluate once per distinct |m|^2.
  std::unordered_map<long, double> radial_cache;
  const double p_high = std::pow(sol.ell, -alpha);
  double sum2 = 0.0, sum2_h = 0.0;
  for (const auto& k : modes) {
    auto it = radial_cache.find(k.norm2());
    if (it == radial_cache.end())
      it = radial_cache.emplace(k.norm2(), eta_radial(sol, k.p_abs())).first;
    const double v = it->second;
    out.eta[k] = v;
    sum2 += v * v;
    if (k.p_abs() >= p_high) {
      out.eta_h[k] = v;
      sum2_h += v * v;
    }
  }
  out.l2_norm_eta = std::sqrt(sum2);
  out.l2_norm_eta_h = std::sqrt(sum2_h);
  return out;
}

double verify_scattering_relation(const ScatteringSolution& sol, int points_per_piece) {
  if (sol.potential.support_radius() <= 0.0) return 0.0;
  const double l_end = sol.domain_radius();
  const double r0 = std::min(sol.potential.support_radius(), l_end);
  const double lambda = sol.lambda_ell;
  const Rhs f{sol.potential, lambda};

  // Fixed-step RK4 re-integration on uniform nodes within each smooth piece,
  // starting from the stored (normalized) slope at the origin.
  struct Piece {
    std::vector<double> r, m;
  };
  std::vector<Piece> pieces;
  State y{0.0, sol.profile.mp.front()};
  auto run_piece = [&](double a, double b, int n) {
    Piece pc;
    const double h = (b - a) / n;
    pc.r.push_back(a);
    pc.m.push_back(y[0]);
    for (int i = 0; i < n; ++i) {
      const double r = a + h * i;
      const State k1 = f(r, y);
      const State k2 = f(r + h / 2, {y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]});
      const State k3 = f(r + h / 2, {y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]});
      const State k4 = f(r + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
      y = {y[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
           y[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
      pc.r.push_back(a + h * (i + 1));
      pc.m.push_back(y[0]);
    }
    pieces.push_back(std::move(pc));
  };
  if (r0 < l_end) {
    run_piece(0.0, r0, points_per_piece);
    run_piece(r0, l_end, points_per_piece);
  } else {
    run_piece(0.0, l_end, points_per_piece);
  }

  double max_res = 0.0, max_d2 = 0.0, max_vm = 0.0, max_lm = 0.0;
  for (const auto& pc : pieces) {
    const double h = pc.r[1] - pc.r[0];
    for (std::size_t i = 1; i + 1 < pc.r.size(); ++i) {
      const double d2 = (pc.m[i + 1] - 2.0 * pc.m[i] + pc.m[i - 1]) / (h * h);
      const double vm = 0.5 * sol.potential(pc.r[i]) * pc.m[i];
      const double lm = lambda * pc.m[i];
      max_res = std::max(max_res, std::abs(-d2 + vm - lm));
      max_d2 = std::max(max_d2, std::abs(d2));
      max_vm = std::max(max_vm, std::abs(vm));
      max_lm = std::max(max_lm, std::abs(lm));
    }
  }
  const double scale = max_d2 + max_vm + max_lm;
  return (scale > 0.0) ? max_res / scale : max_res;
}

}  // namespace gpbose
