#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

#include "powerdomain/ext_rational.hpp"

namespace powerdomain::lawcheck {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a, used to give every suite its own stream.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t instance_seed(std::uint64_t seed, std::string_view suite, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ fnv1a(suite)) + index);
}

/// mt19937_64 with portable bounded draws (std distributions are
/// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % n;
  }
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  /// Positive rational p/q with q <= den_bound and value at most `max_value`.
  Rational positive_rational(std::int64_t den_bound, std::int64_t max_value = 2) {
    const std::int64_t q = between(1, den_bound);
    const std::int64_t p = between(1, q * max_value);
    return Rational(p, q);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace powerdomain::lawcheck
