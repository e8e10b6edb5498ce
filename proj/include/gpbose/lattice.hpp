#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace gpbose {

//! Integer momentum mode; the physical momentum is p = 2*pi*m.
//! Index bookkeeping stays in exact integer arithmetic throughout.
struct Mode {
  std::array<int, 3> m{0, 0, 0};

  long norm2() const {
    return static_cast<long>(m[0]) * m[0] + static_cast<long>(m[1]) * m[1] +
           static_cast<long>(m[2]) * m[2];
  }
  double p_abs() const { return 2.0 * M_PI * std::sqrt(static_cast<double>(norm2())); }
  double p2() const { return 4.0 * M_PI * M_PI * static_cast<double>(norm2()); }

  Mode operator-() const { return Mode{{-m[0], -m[1], -m[2]}}; }
  Mode operator+(const Mode& o) const {
    return Mode{{m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2]}};
  }
  Mode operator-(const Mode& o) const {
    return Mode{{m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2]}};
  }
  bool operator==(const Mode& o) const { return m == o.m; }
  bool operator<(const Mode& o) const { return m < o.m; }
  bool is_zero() const { return m[0] == 0 && m[1] == 0 && m[2] == 0; }
};

struct ModeHash {
  std::size_t operator()(const Mode& k) const {
    // modes are tiny integers; pack into one word
    const auto u = [](int v) { return static_cast<std::uint64_t>(v + (1 << 20)); };
    return std::hash<std::uint64_t>()((u(k.m[0]) << 42) ^ (u(k.m[1]) << 21) ^ u(k.m[2]));
  }
};

// All nonzero modes with |m|^2 <= max_norm2, in lexicographic order.
std::vector<Mode> mode_set(long max_norm2);

// As above but including the zero mode (for the N-particle sector).
std::vector<Mode> mode_set_with_zero(long max_norm2);

bool is_symmetric(const std::vector<Mode>& modes);

}  // namespace gpbose
