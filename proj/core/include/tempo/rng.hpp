#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace tempo {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Roles keep independently derived streams from colliding even when the
/// remaining key parts (e.g. node and run index) coincide.
namespace stream_role {
inline constexpr uint64_t kSi = 1;
inline constexpr uint64_t kShuffle = 2;
inline constexpr uint64_t kSynthetic = 3;
}  // namespace stream_role

/// Deterministic random stream. Streams for independent tasks are derived by
/// hashing (master seed, role, a, b), so results never depend on thread
/// scheduling or on the order in which tasks are issued.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(splitmix64(seed)) {}

  static Rng stream(uint64_t master, uint64_t role, uint64_t a = 0, uint64_t b = 0) {
    return Rng(splitmix64(master ^ splitmix64(role ^ splitmix64(a ^ splitmix64(b)))));
  }

  uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 significant bits.
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), unbiased via rejection sampling.
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    const uint64_t max = std::numeric_limits<uint64_t>::max();
    const uint64_t limit = max - max % bound;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Standard normal deviate (Marsaglia polar method).
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    have_spare_ = true;
    return u * scale;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tempo
