#include "kummerconst/closedforms.hpp"

#include <algorithm>
#include <functional>

#include "kummerconst/errors.hpp"
#include "kummerconst/euler_product.hpp"
#include "kummerconst/factor.hpp"
#include "kummerconst/sieve.hpp"

namespace kummerconst::closedforms {

namespace {

constexpr mpfr_prec_t kPrec = 160;
constexpr std::uint64_t kFirstCutoff = 1000;

using LocalMultiply = std::function<void(ProductAccumulator&, std::uint64_t p)>;
using TailEnclosure = std::function<Enclosure(std::uint64_t P)>;

struct Folded {
  Enclosure value;
  Enclosure product;
  Rational tail_width;
  std::uint64_t P = 0;
};

// outer * prod_{p <= P} factor(p) * tail(P), with P grown until the width is
// at most target. Every tail used here shrinks like 1/P.
Folded adaptive_product(const LocalMultiply& mul, const TailEnclosure& tail, const Rational& outer,
                        const Rational& target, std::uint64_t P_start, std::uint64_t P_max) {
  if (target <= 0) throw SpecError("target error must be positive");
  if (P_max < P_start) throw SpecError("P_max = " + std::to_string(P_max) + " is below the required " + std::to_string(P_start));
  ProductAccumulator acc(kPrec);
  std::uint64_t folded = 1;
  std::uint64_t next = std::min(P_max, std::max(P_start, kFirstCutoff));
  for (;;) {
    for_each_prime(folded + 1, next, [&](std::uint64_t p) { mul(acc, p); });
    folded = next;
    Folded out;
    out.P = folded;
    out.product = acc.value();
    Enclosure t = tail(folded);
    out.tail_width = t.width();
    out.value = out.product * t * outer;
    if (out.value.width() <= target) return out;
    if (folded >= P_max) throw PrecisionNotReached("target error needs primes beyond P_max = " + std::to_string(P_max), out.value);
    const double grow = std::max(2.0, 1.5 * to_double(out.value.width() / target));
    const double want = static_cast<double>(folded) * grow;
    next = want >= static_cast<double>(P_max) ? P_max : static_cast<std::uint64_t>(want);
  }
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  const auto f = factorize(Integer(n));
  return f.factors.empty() ? 2 : f.factors.back().prime.get_ui();
}

// (p^(v+2) + p^(v+1) - p^2) / (p^v (p-1)(p^2-1))
Rational generic_shape_term(std::uint64_t p, unsigned v) {
  const Integer P(p);
  const Integer pv = ipow(P, v);
  return Rational(pv * p * p + pv * p - P * P) / Rational(pv * (P - 1) * (P * P - 1));
}

// (p^(v+2) + p^(v+1) - p^2) / (p^(v+3) + p^v - p^2)
Rational entangled_ratio(std::uint64_t p, unsigned v) {
  const Integer P(p);
  const Integer pv = ipow(P, v);
  return Rational(pv * p * p + pv * p - P * P) / Rational(pv * p * p * p + pv - P * P);
}

// sum over m > P of m / ((m-1)(m^2-1)) <= sum over j >= P of 1/j^2 <= 1/(P-1)
Enclosure universal_tail(std::uint64_t P) { return tail_factor(Rational(1, P - 1)); }

}  // namespace

Enclosure universal_constant(const Rational& target_error, std::uint64_t P_max) {
  auto mul = [](ProductAccumulator& acc, std::uint64_t p) { acc.multiply_one_plus_ratio(+1, p, p - 1, p * p - 1); };
  return adaptive_product(mul, universal_tail, 1, target_error, 2, P_max).value;
}

Rational titchmarsh_prefactor(const kummer::KummerDecomposition& dec, const kummer::EntanglementProfile& profile) {
  const unsigned v2D = valuation(profile.D, 2);
  const unsigned v2e = dec.nu(2);
  Rational c0 = 1;
  Rational prod = 1;
  Rational denom;
  if (!dec.twisted()) {
    if ((v2D == 2 && v2e == 0) || (v2D == 3 && v2e == 1)) c0 = Rational(1, 4);
    else if (v2D == 3 && v2e == 0) c0 = Rational(1, 16);
    denom = Rational(3 * ipow(Integer(2), v2e) - 2);
    for (const auto& [p, l] : profile.levels) prod *= entangled_ratio(p, dec.nu(p));
  } else {
    if (v2D == 3 && v2e == 1) c0 = 4;
    denom = Rational(3 * ipow(Integer(2), v2e + 2) - 2);
    for (const auto& [p, l] : profile.levels)
      if (p != 2) prod *= entangled_ratio(p, dec.nu(p));
  }
  return 1 + c0 / denom * prod;
}

Rational titchmarsh_local_factor(const kummer::KummerDecomposition& dec, std::uint64_t p) {
  const unsigned v = dec.nu(p);
  if (p == 2 && dec.twisted()) {
    const Integer pv = ipow(Integer(2), v);
    return 1 + Rational(4 * pv - pv - 1) / Rational(3 * pv);
  }
  return 1 + generic_shape_term(p, v);
}

engine::ConstantResult titchmarsh_closed(const kummer::KummerDecomposition& dec,
                                         const kummer::EntanglementProfile& profile, const Rational& target_error,
                                         std::uint64_t P_max) {
  const Rational prefactor = titchmarsh_prefactor(dec, profile);
  const std::uint64_t special = largest_prime_factor(dec.e);
  auto mul = [&](ProductAccumulator& acc, std::uint64_t p) {
    if (dec.e % p == 0 || (p == 2 && dec.twisted())) acc.multiply(titchmarsh_local_factor(dec, p));
    else acc.multiply_one_plus_ratio(+1, p, p - 1, p * p - 1);
  };
  const Folded f = adaptive_product(mul, universal_tail, prefactor, target_error, special, P_max);

  engine::ConstantResult res;
  res.value = f.value;
  res.generic_product = f.product;
  res.finite_part = f.product * prefactor;
  res.bracket = Enclosure::point(prefactor);
  res.correction = prefactor;
  res.tail_bound = Rational(1, f.P - 1);
  res.P_used = f.P;
  res.vanishing = engine::VanishingStatus{};
  return res;
}

std::int64_t a_sf(std::int64_t a) {
  if (a == 0) throw DomainError("a_sf(0) is undefined");
  return squarefree_kernel(Integer(a)).get_si();
}

Enclosure artin_A(const kummer::KummerDecomposition& dec, const Rational& target_error, std::uint64_t P_max) {
  if (dec.h % 2 == 0) return Enclosure::point(0);  // the p = 2 factor 1 - 1/(2-1)
  const std::uint64_t h = dec.h;
  auto mul = [h](ProductAccumulator& acc, std::uint64_t p) {
    if (h % p == 0) acc.multiply_one_plus_ratio(-1, 1, p - 1, 1);
    else acc.multiply_one_plus_ratio(-1, 1, p, p - 1);
  };
  // 0 < prod_{p > P} (1 - 1/(p(p-1))) and 1 - prod <= sum_{m > P} 1/(m(m-1)) = 1/P
  auto tail = [](std::uint64_t P) { return Enclosure(1 - Rational(1, P), 1); };
  return adaptive_product(mul, tail, 1, target_error, largest_prime_factor(h), P_max).value;
}

Rational artin_E(std::int64_t a) {
  const std::int64_t sf = a_sf(a);
  if (((sf % 4) + 4) % 4 != 1) throw DomainError("artin_E requires a_sf(a) = 1 (mod 4), got a_sf = " + std::to_string(sf));
  const std::uint64_t h = kummer::decompose(a).h;
  const Integer abs_sf(sf < 0 ? -sf : sf);
  Rational prod = mobius(abs_sf);
  for (const auto& pk : factorize(abs_sf).factors) {
    const Integer& p = pk.prime;
    if (h % p.get_ui() == 0) prod /= Rational(p - 2);
    else prod /= Rational(p * p - p - 1);
  }
  return 1 - prod;
}

Enclosure artin_delta(const kummer::KummerDecomposition& dec, const Rational& target_error, std::uint64_t P_max) {
  const std::int64_t sf = a_sf(dec.a);
  if (((sf % 4) + 4) % 4 != 1) return artin_A(dec, target_error, P_max);
  const Rational E = artin_E(dec.a);
  if (E == 0) return Enclosure::point(0);
  const Rational scaled = target_error / abs(E);
  return artin_A(dec, scaled, P_max) * E;
}

Rational artin_E_product_form(const kummer::KummerDecomposition& dec, const kummer::EntanglementProfile& profile) {
  if (dec.kase == kummer::KummerCase::Square) throw DomainError("artin_E_product_form: a is a perfect square");
  const std::int64_t d = kummer::quadratic_discriminant(dec.a);
  if (d % 2 == 0) throw DomainError("artin_E_product_form: discriminant " + std::to_string(d) + " of Q(sqrt(a)) is even");
  const std::uint64_t abs2d = 2 * static_cast<std::uint64_t>(d < 0 ? -d : d);
  Rational prod = 1;
  for (const auto& pk : factorize(Integer(abs2d)).factors) {
    const Integer G = kummer::kummer_degree(dec, profile, pk.prime.get_ui());
    if (G == 1) throw DomainError("artin_E_product_form: #G(p) = 1 at p = " + to_string(pk.prime));
    prod *= Rational(-1, G - 1);
  }
  return 1 + prod;
}

}  // namespace kummerconst::closedforms
