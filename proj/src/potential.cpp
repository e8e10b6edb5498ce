#include "gpbose/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gpbose/errors.hpp"

namespace gpbose {

Potential Potential::zero() {
  Potential p;
  p.kind_ = Kind::zero;
  p.support_radius_ = 0.0;
  return p;
}

Potential Potential::square_well(double v0, double radius) {
  Potential p;
  p.kind_ = Kind::square_well;
  p.v0_ = v0;
  p.radius_ = radius;
  p.support_radius_ = radius;
  p.validate();
  return p;
}

Potential Potential::tabulated(std::vector<double> r, std::vector<double> v) {
  Potential p;
  p.kind_ = Kind::tabulated;
  p.r_ = std::move(r);
  p.v_ = std::move(v);
  if (p.r_.size() != p.v_.size() || p.r_.size() < 2)
    throw ConfigError("tabulated potential needs matching grids with >= 2 nodes");
  p.support_radius_ = p.r_.back();
  // Catmull-Rom style slopes for C1 piecewise-cubic interpolation.
  const std::size_t n = p.r_.size();
  p.slope_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = (i == 0) ? 0 : i - 1;
    const std::size_t hi = (i + 1 == n) ? i : i + 1;
    p.slope_[i] = (p.v_[hi] - p.v_[lo]) / (p.r_[hi] - p.r_[lo]);
  }
  p.validate();
  return p;
}

void Potential::validate() const {
  switch (kind_) {
    case Kind::zero:
      return;
    case Kind::square_well:
      if (!(v0_ >= 0.0) || !std::isfinite(v0_))
        throw ConfigError("square well depth must be finite and >= 0");
      if (!(radius_ > 0.0) || !std::isfinite(radius_))
        throw ConfigError("square well radius must be finite and > 0");
      return;
    case Kind::tabulated:
      for (std::size_t i = 0; i + 1 < r_.size(); ++i)
        if (!(r_[i] < r_[i + 1]))
          throw ConfigError("tabulated radial grid must be strictly increasing");
      if (r_.front() < 0.0)
        throw ConfigError("tabulated radial grid must start at r >= 0");
      for (double v : v_)
        if (!(v >= 0.0) || !std::isfinite(v))
          throw ConfigError("tabulated potential values must be finite and >= 0");
      return;
  }
}

double Potential::operator()(double r) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::square_well:
      return (r <= radius_) ? v0_ : 0.0;
    case Kind::tabulated: {
      if (r <= r_.front()) return v_.front();
      if (r >= r_.back()) return 0.0;
      auto it = std::upper_bound(r_.begin(), r_.end(), r);
      const std::size_t j = static_cast<std::size_t>(it - r_.begin()) - 1;
      const double h = r_[j + 1] - r_[j];
      const double t = (r - r_[j]) / h;
      const double t2 = t * t, t3 = t2 * t;
      const double val = (2 * t3 - 3 * t2 + 1) * v_[j] + (t3 - 2 * t2 + t) * h * slope_[j] +
                         (-2 * t3 + 3 * t2) * v_[j + 1] + (t3 - t2) * h * slope_[j + 1];
      return std::max(val, 0.0);
    }
  }
  return 0.0;
}

Potential Potential::scaled(double n) const {
  switch (kind_) {
    case Kind::zero:
      return zero();
    case Kind::square_well:
      return square_well(n * n * v0_, radius_ / n);
    case Kind::tabulated: {
      std::vector<double> r(r_), v(v_);
      for (auto& x : r) x /= n;
      for (auto& x : v) x *= n * n;
      return tabulated(std::move(r), std::move(v));
    }
  }
  return zero();
}

namespace {

// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 6> kGlNodes = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr std::array<double, 6> kGlWeights = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

double gl_panel(const std::function<double(double)>& g, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
    acc += kGlWeights[i] * (g(mid + half * kGlNodes[i]) + g(mid - half * kGlNodes[i]));
  }
  return acc * half;
}

}  // namespace

double radial_quadrature(const std::function<double(double)>& g, double a,
                         double b, double max_panel) {
  if (!(b > a)) return 0.0;
  const int panels =
      std::max(1, static_cast<int>(std::ceil((b - a) / std::max(max_panel, 1e-12))));
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + (b - a) * i / panels;
    const double x1 = a + (b - a) * (i + 1) / panels;
    acc += gl_panel(g, x0, x1);
  }
  return acc;
}

double fourier_v(const Potential& pot, double k) {
  pot.validate();
  const double r0 = pot.support_radius();
  if (r0 <= 0.0) return 0.0;
  const double kk = std::abs(k);
  auto integrand = [&](double r) {
    const double kr = kk * r;
    const double sinc = (kr < 1e-8) ? 1.0 - kr * kr / 6.0 : std::sin(kr) / kr;
    return r * r * pot(r) * sinc;
  };
  // Panels resolve both the sinc oscillation and the potential profile.
  double max_panel = r0 / 16.0;
  if (kk > 0.0) max_panel = std::min(max_panel, 2.0 * M_PI / kk / 8.0);
  const double val = 4.0 * M_PI * radial_quadrature(integrand, 0.0, r0, max_panel);
  if (!std::isfinite(val)) throw QuadratureFailure("fourier_v: non-finite quadrature result");
  return val;
}

}  // namespace gpbose
