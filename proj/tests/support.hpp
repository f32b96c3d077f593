#pragma once

#include <array>
#include <cstdint>
#include <numeric>

#include "kummerconst/rational.hpp"

namespace testsupport {

using kummerconst::Integer;
using kummerconst::Rational;

// Covers odd exponents, squares and the twisted case.
inline constexpr std::array<std::int64_t, 13> kPanel = {2, -2, 3, 5, -5, 8, -8, 16, 36, -36, 64, -4, -9};

inline Rational q(long num, long den = 1) { return Rational(num) / Rational(den); }

inline bool naive_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t naive_phi(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t i = 1; i <= n; ++i)
    if (std::gcd(i, n) == 1) ++c;
  return c;
}

inline int naive_mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t d = 2; d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  return sign;
}

inline std::uint64_t naive_powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (std::uint64_t i = 0; i < e; ++i) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % m);
  return r;
}

inline std::uint64_t naive_order(std::int64_t a, std::uint64_t p) {
  const std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                                                     static_cast<std::int64_t>(p));
  std::uint64_t x = r;
  for (std::uint64_t k = 1;; ++k) {
    if (x == 1) return k;
    x = x * r % p;
  }
}

}  // namespace testsupport
