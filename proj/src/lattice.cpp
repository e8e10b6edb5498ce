#include "gpbose/lattice.hpp"

#include <algorithm>
#include <unordered_set>

namespace gpbose {

std::vector<Mode> mode_set(long max_norm2) {
  std::vector<Mode> out;
  const int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(max_norm2))));
  for (int x = -r; x <= r; ++x)
    for (int y = -r; y <= r; ++y)
      for (int z = -r; z <= r; ++z) {
        Mode k{{x, y, z}};
        if (!k.is_zero() && k.norm2() <= max_norm2) out.push_back(k);
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mode> mode_set_with_zero(long max_norm2) {
  std::vector<Mode> out = mode_set(max_norm2);
  out.push_back(Mode{});
  std::sort(out.begin(), out.end());
  return out;
}

bool is_symmetric(const std::vector<Mode>& modes) {
  std::unordered_set<Mode, ModeHash> set(modes.begin(), modes.end());
  for (const auto& k : modes)
    if (!set.count(-k)) return false;
  return true;
}

}  // namespace gpbose
