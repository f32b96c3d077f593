#pragma once

#include <cstdint>

#include "kummerconst/enclosure.hpp"
#include "kummerconst/engine.hpp"
#include "kummerconst/kummer.hpp"

namespace kummerconst::closedforms {

inline constexpr std::uint64_t kDefaultClosedFormPmax = 1'000'000'000;

/// prod_p (1 + p / ((p - 1)(p^2 - 1))) = sum_n 1 / (n Phi(n)).
/// PrecisionNotReached when the width needs primes beyond P_max.
Enclosure universal_constant(const Rational& target_error, std::uint64_t P_max = kDefaultClosedFormPmax);

/// Rational prefactor of the closed-form Titchmarsh product, i.e. the factor
/// in front of the all-primes product.
Rational titchmarsh_prefactor(const kummer::KummerDecomposition& dec, const kummer::EntanglementProfile& profile);

/// Local factor of the all-primes product at p (the separate 2-factor in the
/// twisted case).
Rational titchmarsh_local_factor(const kummer::KummerDecomposition& dec, std::uint64_t p);

/// sum_n 1/[K_n : Q] from its closed-form product. `correction` carries the
/// prefactor; `generic_product` the all-primes product up to P_used.
engine::ConstantResult titchmarsh_closed(const kummer::KummerDecomposition& dec,
                                         const kummer::EntanglementProfile& profile, const Rational& target_error,
                                         std::uint64_t P_max = kDefaultClosedFormPmax);

/// Signed squarefree part: a = a_sf * b^2 with b maximal.
std::int64_t a_sf(std::int64_t a);

/// prod_{p | h} (1 - 1/(p - 1)) prod_{p not | h} (1 - 1/(p(p - 1))).
Enclosure artin_A(const kummer::KummerDecomposition& dec, const Rational& target_error,
                  std::uint64_t P_max = kDefaultClosedFormPmax);

/// Hooley's correction factor. DomainError unless a_sf(a) = 1 (mod 4).
Rational artin_E(std::int64_t a);

/// E_a * A_a when a_sf = 1 (mod 4), otherwise A_a.
Enclosure artin_delta(const kummer::KummerDecomposition& dec, const Rational& target_error,
                      std::uint64_t P_max = kDefaultClosedFormPmax);

/// 1 + prod_{p | 2d} -1/(#G(p) - 1) with d the discriminant of Q(sqrt(a)).
/// DomainError if a is a square or d is even.
Rational artin_E_product_form(const kummer::KummerDecomposition& dec, const kummer::EntanglementProfile& profile);

}  // namespace kummerconst::closedforms
