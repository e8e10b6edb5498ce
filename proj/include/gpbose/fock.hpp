#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpbose/lattice.hpp"

namespace gpbose {

enum class Sector {
  excitation_leq_n,   // F_+^{<=N}: zero mode excluded, sum of occupations <= N
  particle_exactly_n  // full N-particle sector: zero mode included, sum == N
};

//! Deterministic occupation-number enumeration over an ordered mode list.
//!
//! States are enumerated lexicographically in mode order, so two builds of
//! the same basis produce identical index maps. Total momentum per state is
//! precomputed in exact integer arithmetic.
class FockBasis {
 public:
  FockBasis(std::vector<Mode> modes, int n_max, Sector sector,
            std::size_t dim_budget = 5'000'000);

  const std::vector<Mode>& modes() const { return modes_; }
  int n_max() const { return n_max_; }
  Sector sector() const { return sector_; }
  std::size_t dim() const { return states_.size(); }
  std::size_t num_modes() const { return modes_.size(); }

  const std::vector<std::uint8_t>& occupations(std::size_t idx) const;
  // ordinal of the given occupation vector, or -1 when absent
  long index_of(const std::uint8_t* occ) const;
  long index_of(const std::vector<std::uint8_t>& occ) const { return index_of(occ.data()); }

  int mode_position(const Mode& k) const;  // -1 when k is not in the basis
  int zero_mode_position() const { return zero_pos_; }

  // total excitation count (nonzero modes only) of a state
  int excitation_count(std::size_t idx) const { return n_plus_[idx]; }
  // integer total momentum sum_k occ_k * m_k of a state
  const Mode& total_momentum(std::size_t idx) const { return momentum_[idx]; }

  bool same_layout(const FockBasis& other) const;

 private:
  std::vector<Mode> modes_;
  int n_max_;
  Sector sector_;
  int zero_pos_ = -1;
  std::vector<std::vector<std::uint8_t>> states_;
  std::unordered_map<std::string, long> index_;
  std::unordered_map<Mode, int, ModeHash> mode_pos_;
  std::vector<int> n_plus_;
  std::vector<Mode> momentum_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

// Builds the basis (shared ownership: operators keep their basis alive).
BasisPtr build_basis(std::vector<Mode> modes, int n_max, Sector sector,
                     std::size_t dim_budget = 5'000'000);

}  // namespace gpbose
