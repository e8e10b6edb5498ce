#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gpbose/bounds.hpp"
#include "gpbose/errors.hpp"
#include "gpbose/scattering.hpp"

using namespace gpbose;

namespace {
const Potential kWell = Potential::square_well(2.0, 1.0);
constexpr double kA0Closed = 1.0 - 0.76159415595576488;  // 1 - tanh(1)
}  // namespace

TEST_CASE("scattering length of the square well hits the closed form") {
  const double a0 = zero_energy_scattering(kWell);
  CHECK(a0 == doctest::Approx(kA0Closed).epsilon(1e-10));
  // generic closed form R (1 - tanh(cR)/(cR)) with c = sqrt(V0/2)
  const Potential other = Potential::square_well(5.0, 0.7);
  const double c = std::sqrt(5.0 / 2.0);
  const double expect = 0.7 * (1.0 - std::tanh(c * 0.7) / (c * 0.7));
  CHECK(zero_energy_scattering(other) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("zero potential scatters trivially") {
  CHECK(zero_energy_scattering(Potential::zero()) == 0.0);
  const ScatteringSolution sol = solve_neumann(Potential::zero(), 20, 0.25);
  CHECK(sol.lambda_ell == 0.0);
  CHECK(sol.a0 == 0.0);
  for (double f : sol.f_samples) CHECK(f == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integral_vf(sol) == 0.0);
  CHECK(verify_scattering_relation(sol) == 0.0);
}

TEST_CASE("scaled interaction scatters with length a0/N") {
  const double a0 = zero_energy_scattering(kWell);
  const double a0_scaled = zero_energy_scattering(kWell.scaled(8.0));
  CHECK(a0_scaled == doctest::Approx(a0 / 8.0).epsilon(1e-9));
}

TEST_CASE("Neumann ground state approaches the 3 a0 / L^3 scale") {
  const double a0 = zero_energy_scattering(kWell);
  const ScatteringSolution sol = solve_neumann(kWell, 80, 0.25);  // L = 20
  const double asymptotic = 3.0 * a0 / std::pow(20.0, 3);
  CHECK(std::abs(sol.lambda_ell / asymptotic - 1.0) < 0.10);

  // monotone approach of lambda * L^3 / (3 a0) toward 1
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {20, 40, 80}) {
    const ScatteringSolution s = solve_neumann(kWell, n, 0.25);
    const double l3 = std::pow(n * 0.25, 3);
    const double ratio = s.lambda_ell * l3 / (3.0 * a0);
    CHECK(ratio < prev + 1e-12);
    prev = ratio;
  }
  CHECK(std::abs(prev - 1.0) < 0.10);
}

TEST_CASE("solution stays inside [0,1] and obeys the boundary conditions") {
  const ScatteringSolution sol = solve_neumann(kWell, 20, 0.25);
  for (std::size_t i = 0; i < sol.f_samples.size(); ++i) {
    CHECK(sol.f_samples[i] >= -1e-12);
    CHECK(sol.f_samples[i] <= 1.0 + 1e-8);
    CHECK(sol.w_samples[i] >= -1e-8);
    CHECK(sol.w_samples[i] <= 1.0 + 1e-12);
  }
  const double l_end = sol.domain_radius();
  CHECK(sol.f(l_end) == doctest::Approx(1.0).epsilon(1e-10));
  // Neumann derivative of f vanishes at the boundary: m'(L) L = m(L)
  CHECK(sol.profile.eval_mp(l_end) * l_end ==
        doctest::Approx(sol.profile.eval_m(l_end)).epsilon(1e-9));
}

TEST_CASE("w decays no slower than C/(r+1) with a stable constant") {
  double worst_prev = 0.0;
  for (int n : {20, 40, 80}) {
    const ScatteringSolution sol = solve_neumann(kWell, n, 0.25);
    double c_fit = 0.0;
    for (std::size_t i = 0; i < sol.r_grid.size(); ++i)
      c_fit = std::max(c_fit, sol.w_samples[i] * (sol.r_grid[i] + 1.0));
    if (worst_prev > 0.0) CHECK(c_fit < 1.5 * worst_prev);
    worst_prev = std::max(worst_prev, c_fit);
  }
  CHECK(worst_prev < 10.0);
}

TEST_CASE("potential-weighted integral of f approaches 8 pi a0 at rate 1/L") {
  const double a0 = zero_energy_scattering(kWell);
  const double target = 8.0 * M_PI * a0;
  std::vector<double> ls, errs, cs;
  for (int n : {20, 40, 80, 160}) {  // ell = 0.25 -> L in {5, 10, 20, 40}
    const ScatteringSolution sol = solve_neumann(kWell, n, 0.25);
    const double value = integral_vf(sol);
    ls.push_back(n * 0.25);
    errs.push_back(std::abs(value - target));
    cs.push_back(errs.back() * ls.back() / (a0 * a0));  // fitted C in C a0^2/L
  }
  const double slope = loglog_slope(ls, errs);
  CHECK(slope > -1.25);
  CHECK(slope < -0.75);
  const double c_hi = *std::max_element(cs.begin(), cs.end());
  const double c_lo = *std::min_element(cs.begin(), cs.end());
  CHECK(c_hi / c_lo < 2.0);  // the error really carries the a0^2/L shape
}

TEST_CASE("eta is even, real, and 1/p^2 bounded on the lattice") {
  const ScatteringSolution sol = solve_neumann(kWell, 20, 0.25);
  const EtaCoefficients eta = eta_coefficients(sol, mode_set(4), 3.5, 2.0);
  for (const auto& k : eta.modes) CHECK(eta.eta.at(k) == eta.eta.at(-k));

  // fitted sup of p^2 |eta_p| saturates once the set is large enough,
  // which is the numerical content of the 1/p^2 envelope
  std::vector<double> sups;
  for (long cutoff : {16, 36, 64}) {
    double c_fit = 0.0;
    std::unordered_map<long, double> cache;
    for (const auto& k : mode_set(cutoff)) {
      auto it = cache.find(k.norm2());
      if (it == cache.end())
        it = cache.emplace(k.norm2(), eta_radial(sol, k.p_abs())).first;
      c_fit = std::max(c_fit, k.p2() * std::abs(it->second));
    }
    CHECK(std::isfinite(c_fit));
    sups.push_back(c_fit);
  }
  CHECK(sups.back() / sups.front() < 2.0);
}

TEST_CASE("eta mode sums stay below the radial norm integral") {
  const ScatteringSolution sol = solve_neumann(kWell, 20, 0.25);
  // Parseval reference: int N^2 w(Nx)^2 over the ball of radius ell
  const double l_end = sol.domain_radius();
  const double n = sol.n_particles;
  auto integrand = [&](double r) {
    const double w = 1.0 - sol.profile.eval_m(r) / r;
    return r * r * w * w;
  };
  const double reference =
      4.0 * M_PI / n * radial_quadrature(integrand, 1e-12, l_end, l_end / 512.0);

  double mode_sum = 0.0;
  const auto modes = mode_set(64);
  std::unordered_map<long, double> cache;
  for (const auto& k : modes) {
    auto it = cache.find(k.norm2());
    if (it == cache.end()) it = cache.emplace(k.norm2(), eta_radial(sol, k.p_abs())).first;
    mode_sum += it->second * it->second;
  }
  const double eta0 = eta_radial(sol, 0.0);
  mode_sum += eta0 * eta0;
  CHECK(mode_sum <= reference + 1e-6);
  CHECK(mode_sum > 0.5 * reference);  // the finite set already carries most of it

  // |eta_0| <= C ell^2 shape: fitted constant stays put when ell shrinks
  const ScatteringSolution half = solve_neumann(kWell, 40, 0.125);
  const double c1 = std::abs(eta0) / (0.25 * 0.25);
  const double c2 = std::abs(eta_radial(half, 0.0)) / (0.125 * 0.125);
  CHECK(c2 < 2.0 * c1);
}

TEST_CASE("high-momentum restriction obeys the ell^(alpha/2) norm shape") {
  // fitted C in ||eta_H|| <= C ell^(alpha/2), alpha small enough that the
  // cutoff stays on the lattice
  const double alpha = 1.5, beta = 0.75;
  std::vector<double> cs;
  for (double ell : {0.15, 0.2, 0.25}) {
    const int n = static_cast<int>(std::ceil(8.0 / ell / 4.0) * 4);
    const ScatteringSolution sol = solve_neumann(kWell, n, ell);
    const EtaCoefficients eta = eta_coefficients(sol, mode_set(64), alpha, beta);
    CHECK(!eta.eta_h.empty());
    cs.push_back(eta.l2_norm_eta_h / std::pow(ell, alpha / 2.0));
  }
  const double lo = *std::min_element(cs.begin(), cs.end());
  const double hi = *std::max_element(cs.begin(), cs.end());
  CHECK(hi / lo < 2.0);
}

TEST_CASE("radial relation residual is small and improves under refinement") {
  const ScatteringSolution sol = solve_neumann(kWell, 20, 0.25);
  const double coarse = verify_scattering_relation(sol, 512);
  const double fine = verify_scattering_relation(sol, 2048);
  CHECK(fine <= 1e-6);
  CHECK(coarse / fine >= 8.0);  // 4x refinement, second-order stencil
}

TEST_CASE("zero-energy length agrees with the Neumann profile tail") {
  // cross-check of the two solvers through the boundary-layer expansion
  //   m(r) = r - a (1 - 3r/(2L) + r^3/(2L^3)) + O(a^2/L)
  const double a0 = zero_energy_scattering(kWell);
  std::vector<double> ls, errs;
  for (int n : {40, 80, 160}) {
    const ScatteringSolution sol = solve_neumann(kWell, n, 0.25);
    const double l_end = sol.domain_radius();
    const double r = 0.5 * l_end;
    const double shape = 1.0 - 1.5 * r / l_end + 0.5 * std::pow(r / l_end, 3);
    const double a_est = (r - sol.profile.eval_m(r)) / shape;
    ls.push_back(l_end);
    errs.push_back(std::abs(a_est - a0));
  }
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) CHECK(errs[i + 1] < errs[i]);
  CHECK(errs.back() < 10.0 * a0 * a0 / ls.back());
}

TEST_CASE("preconditions are enforced") {
  CHECK_THROWS_AS(solve_neumann(kWell, 1, 0.25), ConfigError);
  CHECK_THROWS_AS(solve_neumann(kWell, 20, 0.6), ConfigError);
  CHECK_THROWS_AS(solve_neumann(kWell, 2, 0.25), ConfigError);  // N ell <= R0
  const ScatteringSolution sol = solve_neumann(kWell, 20, 0.25);
  CHECK_THROWS_AS(eta_coefficients(sol, {Mode{{0, 0, 1}}}, 3.5, 2.0),
                  AsymmetricModeSet);
  CHECK_THROWS_AS(eta_coefficients(sol, mode_set_with_zero(1), 3.5, 2.0),
                  AsymmetricModeSet);
  CHECK_THROWS_AS(eta_coefficients(sol, mode_set(1), 2.0, 3.5), ConfigError);
}
