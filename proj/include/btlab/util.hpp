#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace btlab {

// Error taxonomy, mapped to CLI exit codes by the driver.
struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceGuard : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionError : DomainError {
  using DomainError::DomainError;
};

// Enumeration guard: the largest finite set a single scan may touch.
// Overridable via BUILDING_LAB_GUARD or per-call argument.
inline std::uint64_t default_guard() {
  if (const char* s = std::getenv("BUILDING_LAB_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ull;
}

inline void check_guard(std::uint64_t work, std::uint64_t guard,
                        const std::string& what) {
  if (work > guard)
    throw ResourceGuard(what + ": enumeration of size " + std::to_string(work) +
                        " exceeds guard " + std::to_string(guard));
}

// Small exact fraction for apartment coordinates and filtration levels.
// Values stay tiny (coordinates, thresholds); int64 with normalization.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n) : num(n), den(1) {}
  Frac(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw InvalidArgument("Frac: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  friend Frac operator+(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return Frac(a.num * b.num, a.den * b.den);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.num == 0) throw InvalidArgument("Frac: division by zero");
    return Frac(a.num * b.den, a.den * b.num);
  }
  Frac operator-() const { return Frac(-num, den); }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
  friend bool operator<(const Frac& a, const Frac& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
  friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
  friend bool operator>=(const Frac& a, const Frac& b) { return !(a < b); }

  bool is_integer() const { return den == 1; }
  long long floor() const {
    return num >= 0 ? num / den : -(((-num) + den - 1) / den);
  }
  long long ceil() const { return -Frac(-num, den).floor(); }
  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

// Deterministic PRNG (splitmix64): every sampled check is reproducible from
// its seed, independent of platform and standard library.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("Rng::below(0)");
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }
};

inline std::uint64_t ipow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace btlab
