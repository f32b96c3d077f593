#pragma once

#include <cstdint>
#include <vector>

#include "kummerconst/rational.hpp"

namespace kummerconst {

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// sign * prod p^k, primes strictly increasing.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  Integer reconstruct() const;
  /// Exponent of p (0 when p does not occur).
  unsigned exponent_of(const Integer& p) const;
};

/// Work limit for factorize: one unit per trial division or Pollard step.
inline constexpr std::uint64_t kDefaultFactorBudget = 50'000'000;

/// Trial division up to 10^6, then Pollard rho (Brent) with a Miller-Rabin
/// primality test that is deterministic below 3.3e24.
/// Throws DomainError for n = 0 and FactorizationTimeout when the budget runs out.
Factorization factorize(const Integer& n, std::uint64_t budget = kDefaultFactorBudget);

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

/// m with n = m * b^2, m squarefree, sign(m) = sign(n).
Integer squarefree_kernel(const Integer& n);

Integer euler_phi(const Integer& n);
int mobius(const Integer& n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Least t >= 1 with a^t = 1 (mod p). Factors p - 1 and strips prime
/// factors from the exponent while the power stays 1. DomainError if p | a.
std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p);

/// Same, with the distinct prime factors of p - 1 supplied by the caller
/// (used by the prime scans, which get them from a smallest-factor table).
std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p, const std::vector<std::uint64_t>& primes_of_p_minus_1);

}  // namespace kummerconst
