#include "kummerconst/kummer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "kummerconst/errors.hpp"
#include "kummerconst/factor.hpp"

namespace kummerconst::kummer {

namespace {

std::uint64_t odd_part(std::uint64_t n) {
  while (n % 2 == 0) n /= 2;
  return n;
}

Integer phi_prime_power(std::uint64_t p, unsigned k) {
  if (k == 0) return 1;
  return ipow(Integer(p), k - 1) * (p - 1);
}

}  // namespace

std::string to_string(KummerCase c) {
  switch (c) {
    case KummerCase::OddExponent: return "OddExponent";
    case KummerCase::Square: return "Square";
    case KummerCase::Twisted: return "Twisted";
  }
  return "?";
}

unsigned KummerDecomposition::nu(std::uint64_t p) const {
  unsigned v = 0;
  for (std::uint64_t x = e; x % p == 0; x /= p) ++v;
  return v;
}

unsigned EntanglementProfile::level(std::uint64_t p) const {
  auto it = levels.find(p);
  return it == levels.end() ? 0 : it->second;
}

KummerDecomposition decompose(std::int64_t a) {
  if (a == 0 || a == 1 || a == -1) throw DomainError("decompose: a must not be 0, 1 or -1");
  if (a == std::numeric_limits<std::int64_t>::min()) throw DomainError("decompose: |a| does not fit in 64 bits");

  const Integer abs_a = a < 0 ? Integer(-a) : Integer(a);
  const Factorization f = factorize(abs_a);
  std::uint64_t e = 0;
  for (const auto& pk : f.factors) e = std::gcd(e, std::uint64_t{pk.exponent});

  Integer root = 1;
  for (const auto& pk : f.factors) root *= ipow(pk.prime, pk.exponent / e);

  KummerDecomposition dec;
  dec.a = a;
  dec.a0 = a < 0 ? -root.get_si() : root.get_si();
  dec.e = e;
  const unsigned v2 = valuation(static_cast<std::int64_t>(e), 2);
  if (e % 2 == 1) {
    dec.kase = KummerCase::OddExponent;
  } else {
    dec.kase = a > 0 ? KummerCase::Square : KummerCase::Twisted;
  }
  dec.s = dec.twisted() ? v2 + 2 : v2 + 1;
  dec.h = a > 0 ? e : odd_part(e);
  return dec;
}

std::int64_t quadratic_discriminant(std::int64_t n) {
  if (n == 0) throw DomainError("quadratic_discriminant: n must be nonzero");
  const std::int64_t m = squarefree_kernel(Integer(n)).get_si();
  if (m == 1) return 1;
  // m mod 4 for negative m as well
  return ((m % 4) + 4) % 4 == 1 ? m : 4 * m;
}

EntanglementProfile entanglement_profile(const KummerDecomposition& dec) {
  EntanglementProfile prof;
  prof.D = quadratic_discriminant(dec.a0);

  const std::uint64_t absD = static_cast<std::uint64_t>(prof.D < 0 ? -prof.D : prof.D);
  for (const auto& pk : factorize(Integer(absD)).factors) {
    const std::uint64_t p = pk.prime.get_ui();
    if (p != 2) prof.levels[p] = 1;
  }

  const unsigned v2D = valuation(prof.D, 2);
  const unsigned v2e = dec.nu(2);
  unsigned l2 = 0;
  if (v2D == 0) {
    l2 = dec.s;
  } else if (v2D == 2) {
    l2 = std::max(2u, dec.s);
  } else if (v2D == 3) {
    l2 = (v2e == 1 && dec.a < 0) ? 2 : std::max(3u, dec.s);
  } else {
    throw IntegrityError("entanglement_profile: D = " + std::to_string(prof.D) + " is not a fundamental discriminant");
  }
  prof.levels[2] = l2;

  prof.n_a = 1;
  for (const auto& [p, l] : prof.levels) prof.n_a *= ipow(Integer(p), l);
  return prof;
}

unsigned k_prime(const KummerDecomposition& dec, std::uint64_t p, unsigned k) {
  if (k == 0) throw DomainError("k_prime requires k >= 1");
  const unsigned v = dec.nu(p);
  if (k > v) return k - v;
  return (p == 2 && dec.twisted()) ? 1 : 0;
}

Integer card_A(const KummerDecomposition& dec, std::uint64_t p, unsigned k) {
  if (k == 0) return 1;
  const Integer P(p);
  Integer matrix_count;
  if (p == 2 && dec.twisted()) {
    matrix_count = ipow(P, k - std::min(k, dec.s - 1)) * phi_prime_power(2, k + 1);
  } else {
    matrix_count = ipow(P, k - std::min(k, dec.nu(p))) * phi_prime_power(p, k);
  }
  const Integer kprime_count = ipow(P, k + k_prime(dec, p, k) - 1) * (p - 1);
  if (matrix_count != kprime_count)
    throw IntegrityError("card_A: closed forms disagree at p = " + std::to_string(p) + ", k = " + std::to_string(k));
  return matrix_count;
}

Integer card_A_n(const KummerDecomposition& dec, std::uint64_t n) {
  if (n == 0) throw DomainError("card_A_n requires n >= 1");
  Integer total = 1;
  for (const auto& pk : factorize(Integer(n)).factors) total *= card_A(dec, pk.prime.get_ui(), pk.exponent);
  return total;
}

Integer kummer_degree(const KummerDecomposition& dec, const EntanglementProfile& profile, std::uint64_t n) {
  Integer card = card_A_n(dec, n);
  if (Integer(n) % profile.n_a != 0) return card;
  if (card % 2 != 0) throw IntegrityError("kummer_degree: odd #A(" + std::to_string(n) + ") cannot be halved");
  return card / 2;
}

}  // namespace kummerconst::kummer
