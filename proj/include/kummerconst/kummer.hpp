#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "kummerconst/rational.hpp"

namespace kummerconst::kummer {

enum class KummerCase { OddExponent, Square, Twisted };

std::string to_string(KummerCase c);

/// a = ±a0^e with e maximal and sign(a0) = sign(a).
struct KummerDecomposition {
  std::int64_t a = 0;
  std::int64_t a0 = 0;
  std::uint64_t e = 1;
  /// Largest h with a a perfect h-th power (odd part of e when a < 0).
  std::uint64_t h = 1;
  KummerCase kase = KummerCase::OddExponent;
  /// nu_2(e) + 1, or nu_2(e) + 2 in the twisted case.
  unsigned s = 1;

  bool twisted() const { return kase == KummerCase::Twisted; }
  unsigned nu(std::uint64_t p) const;  // p-adic valuation of e
};

/// Discriminant D of Q(sqrt(a0)) and the levels l(p) for p | 2D.
struct EntanglementProfile {
  std::int64_t D = 1;
  std::map<std::uint64_t, unsigned> levels;  // absent primes have level 0
  Integer n_a{1};

  unsigned level(std::uint64_t p) const;
};

/// DomainError for a in {0, 1, -1}.
KummerDecomposition decompose(std::int64_t a);

/// m or 4m for the squarefree kernel m of a nonzero integer, i.e. the
/// discriminant of Q(sqrt(n)). Returns 1 when n is a perfect square.
std::int64_t quadratic_discriminant(std::int64_t n);

EntanglementProfile entanglement_profile(const KummerDecomposition& dec);

/// k' with #A(p^k) = p^(k + k' - 1) (p - 1); k >= 1.
unsigned k_prime(const KummerDecomposition& dec, std::uint64_t p, unsigned k);

/// #A(p^k). Uses the matrix-model count p^(k - min(k, nu_p(e))) Phi(p^k)
/// (Phi(2^(k+1)) for twisted p = 2) and cross-checks it against the k' form.
Integer card_A(const KummerDecomposition& dec, std::uint64_t p, unsigned k);

/// #A(n) = prod over p^k || n of #A(p^k).
Integer card_A_n(const KummerDecomposition& dec, std::uint64_t n);

/// [Q(zeta_n, a^(1/n)) : Q]: #A(n), halved exactly when n_a | n.
Integer kummer_degree(const KummerDecomposition& dec, const EntanglementProfile& profile, std::uint64_t n);

}  // namespace kummerconst::kummer
