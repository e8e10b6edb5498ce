#include "gpbose/fock.hpp"

#include <algorithm>

#include "gpbose/errors.hpp"

namespace gpbose {

namespace {

std::string key_of(const std::uint8_t* occ, std::size_t n) {
  return std::string(reinterpret_cast<const char*>(occ), n);
}

// dim of {occ : sum <= budget} over n_modes slots = C(n_modes + budget, budget)
double dim_estimate(std::size_t n_modes, int budget) {
  double v = 1.0;
  for (int i = 1; i <= budget; ++i)
    v *= static_cast<double>(n_modes + i) / static_cast<double>(i);
  return v;
}

}  // namespace

FockBasis::FockBasis(std::vector<Mode> modes, int n_max, Sector sector,
                     std::size_t dim_budget)
    : modes_(std::move(modes)), n_max_(n_max), sector_(sector) {
  if (n_max_ < 0) throw ConfigError("FockBasis: N must be >= 0");
  std::sort(modes_.begin(), modes_.end());
  for (std::size_t i = 0; i + 1 < modes_.size(); ++i)
    if (modes_[i] == modes_[i + 1]) throw ConfigError("FockBasis: duplicate mode");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].is_zero()) {
      if (sector_ == Sector::excitation_leq_n)
        throw ConfigError("FockBasis: zero mode not allowed in the excitation sector");
      zero_pos_ = static_cast<int>(i);
    }
    mode_pos_[modes_[i]] = static_cast<int>(i);
  }
  if (sector_ == Sector::particle_exactly_n && zero_pos_ < 0)
    throw ConfigError("FockBasis: particle sector requires the zero mode");

  const double est = dim_estimate(modes_.size(), n_max_);
  if (est > 2.0 * static_cast<double>(dim_budget))
    throw DimensionBudgetExceeded("FockBasis: estimated dimension exceeds budget",
                                  static_cast<std::size_t>(est));

  // Lexicographic enumeration over occupations with sum <= N. In the particle
  // sector the zero-mode slot is not enumerated; its occupation is the
  // complement N - (sum over nonzero modes).
  std::vector<int> free_slots;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (static_cast<int>(i) != zero_pos_) free_slots.push_back(static_cast<int>(i));

  std::vector<std::uint8_t> occ(modes_.size(), 0);
  auto emit = [&](int used) {
    auto state = occ;
    if (zero_pos_ >= 0) state[zero_pos_] = static_cast<std::uint8_t>(n_max_ - used);
    if (states_.size() >= dim_budget)
      throw DimensionBudgetExceeded("FockBasis: dimension exceeds budget",
                                    states_.size() + 1);
    states_.push_back(std::move(state));
  };
  auto recurse = [&](auto&& self, std::size_t level, int used) -> void {
    if (level == free_slots.size()) {
      emit(used);
      return;
    }
    for (int n = 0; n <= n_max_ - used; ++n) {
      occ[free_slots[level]] = static_cast<std::uint8_t>(n);
      self(self, level + 1, used + n);
    }
    occ[free_slots[level]] = 0;
  };
  recurse(recurse, 0, 0);

  index_.reserve(states_.size() * 2);
  n_plus_.resize(states_.size());
  momentum_.resize(states_.size());
  for (std::size_t s = 0; s < states_.size(); ++s) {
    index_[key_of(states_[s].data(), modes_.size())] = static_cast<long>(s);
    int np = 0;
    Mode mom{};
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      const int n = states_[s][i];
      if (static_cast<int>(i) != zero_pos_) np += n;
      for (int c = 0; c < 3; ++c) mom.m[c] += n * modes_[i].m[c];
    }
    n_plus_[s] = np;
    momentum_[s] = mom;
  }
}

const std::vector<std::uint8_t>& FockBasis::occupations(std::size_t idx) const {
  return states_[idx];
}

long FockBasis::index_of(const std::uint8_t* occ) const {
  const auto it = index_.find(key_of(occ, modes_.size()));
  return (it == index_.end()) ? -1 : it->second;
}

int FockBasis::mode_position(const Mode& k) const {
  const auto it = mode_pos_.find(k);
  return (it == mode_pos_.end()) ? -1 : it->second;
}

bool FockBasis::same_layout(const FockBasis& other) const {
  return sector_ == other.sector_ && n_max_ == other.n_max_ && modes_ == other.modes_;
}

BasisPtr build_basis(std::vector<Mode> modes, int n_max, Sector sector,
                     std::size_t dim_budget) {
  return std::make_shared<const FockBasis>(std::move(modes), n_max, sector, dim_budget);
}

}  // namespace gpbose
