#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gpbose/errors.hpp"
#include "gpbose/potential.hpp"

using namespace gpbose;

namespace {
// closed form for the square well: 4 pi V0 (sin kR - kR cos kR)/k^3
double square_well_vhat(double v0, double r, double k) {
  if (k < 1e-12) return 4.0 * M_PI * v0 * r * r * r / 3.0;
  return 4.0 * M_PI * v0 * (std::sin(k * r) - k * r * std::cos(k * r)) / (k * k * k);
}
}  // namespace

TEST_CASE("zero potential transforms to zero") {
  const Potential v = Potential::zero();
  for (double k : {0.0, 1.0, 17.3}) CHECK(fourier_v(v, k) == 0.0);
}

TEST_CASE("square well at k = 0 gives the volume integral") {
  const Potential v = Potential::square_well(2.0, 1.0);
  CHECK(fourier_v(v, 0.0) == doctest::Approx(8.0 * M_PI / 3.0).epsilon(1e-12));
}

TEST_CASE("square well matches the closed form across k") {
  const Potential v = Potential::square_well(2.0, 1.0);
  for (double k : {0.3, 1.0, 2.0, 6.283, 12.0, 40.0, 128.0}) {
    const double expect = square_well_vhat(2.0, 1.0, k);
    CHECK(fourier_v(v, k) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("transform is even and dominated by its value at zero") {
  const Potential v = Potential::square_well(1.7, 0.8);
  const double v0 = fourier_v(v, 0.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ks(0.0, 60.0);
  for (int i = 0; i < 200; ++i) {
    const double k = ks(rng);
    const double plus = fourier_v(v, k);
    const double minus = fourier_v(v, -k);
    CHECK(plus == doctest::Approx(minus).epsilon(1e-14));
    CHECK(std::abs(plus) <= v0 + 1e-12);
  }
}

TEST_CASE("tabulated profile interpolates and transforms consistently") {
  // tabulate the square well with a smooth shoulder and compare at k = 0
  std::vector<double> r, val;
  for (int i = 0; i <= 64; ++i) {
    const double x = i / 64.0;
    r.push_back(x);
    val.push_back(2.0 * (1.0 - x * x) * (1.0 - x * x));
  }
  const Potential v = Potential::tabulated(r, val);
  CHECK(v(0.5) == doctest::Approx(2.0 * 0.75 * 0.75).epsilon(1e-3));
  const double direct = fourier_v(v, 0.0);
  // 4 pi * 2 * int_0^1 x^2 (1-x^2)^2 dx = 8 pi * (1/3 - 2/5 + 1/7)
  const double expect = 8.0 * M_PI * (1.0 / 3 - 2.0 / 5 + 1.0 / 7);
  CHECK(direct == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("invalid potentials are rejected") {
  CHECK_THROWS_AS(Potential::square_well(-1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(Potential::square_well(1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(Potential::tabulated({0.0, 0.5, 0.5}, {1.0, 1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(Potential::tabulated({0.0, 0.5, 1.0}, {1.0, -0.5, 0.0}), ConfigError);
}

TEST_CASE("scaling moves the support and weight as N^2 V(N r)") {
  const Potential v = Potential::square_well(2.0, 1.0);
  const Potential vs = v.scaled(8.0);
  CHECK(vs.support_radius() == doctest::Approx(0.125));
  CHECK(vs(0.1) == doctest::Approx(128.0));
  CHECK(vs(0.2) == 0.0);
}
