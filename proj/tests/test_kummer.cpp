#include <doctest.h>

#include "kummerconst/errors.hpp"
#include "kummerconst/factor.hpp"
#include "kummerconst/kummer.hpp"
#include "support.hpp"

using namespace kummerconst;
using namespace kummerconst::kummer;

namespace {

std::int64_t ipow64(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool is_square_free(std::int64_t m) {
  for (std::int64_t d = 2; d * d <= (m < 0 ? -m : m); ++d)
    if (m % (d * d) == 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("kummer") {

TEST_CASE("decompose examples") {
  auto d8 = decompose(8);
  CHECK(d8.a0 == 2);
  CHECK(d8.e == 3);
  CHECK(d8.h == 3);
  CHECK(d8.kase == KummerCase::OddExponent);
  CHECK(d8.s == 1);

  auto dm4 = decompose(-4);
  CHECK(dm4.a0 == -2);
  CHECK(dm4.e == 2);
  CHECK(dm4.h == 1);
  CHECK(dm4.kase == KummerCase::Twisted);
  CHECK(dm4.s == 3);

  auto dm9 = decompose(-9);
  CHECK(dm9.a0 == -3);
  CHECK(dm9.e == 2);
  CHECK(dm9.h == 1);
  CHECK(dm9.kase == KummerCase::Twisted);
  CHECK(dm9.s == 3);

  auto d64 = decompose(64);
  CHECK(d64.a0 == 2);
  CHECK(d64.e == 6);
  CHECK(d64.kase == KummerCase::Square);
  CHECK(d64.s == 2);

  auto dm8 = decompose(-8);
  CHECK(dm8.a0 == -2);
  CHECK(dm8.e == 3);
  CHECK(dm8.kase == KummerCase::OddExponent);

  // -64 = -(2^6): e = 6 and h is the odd part of e
  auto dm64 = decompose(-64);
  CHECK(dm64.a0 == -2);
  CHECK(dm64.e == 6);
  CHECK(dm64.h == 3);
  CHECK(dm64.kase == KummerCase::Twisted);

  CHECK(to_string(KummerCase::Twisted) == "Twisted");
  for (std::int64_t bad : {0, 1, -1}) CHECK_THROWS_AS(decompose(bad), DomainError);
}

TEST_CASE("property: decomposition invariants over a range") {
  for (std::int64_t a = -3000; a <= 3000; ++a) {
    if (a >= -1 && a <= 1) continue;
    const auto d = decompose(a);
    const std::int64_t abs_a0 = d.a0 < 0 ? -d.a0 : d.a0;
    REQUIRE(ipow64(abs_a0, static_cast<unsigned>(d.e)) == (a < 0 ? -a : a));
    REQUIRE((d.a0 < 0) == (a < 0));
    // e is maximal: |a0| is not a perfect power
    for (unsigned k = 2; k < 12; ++k)
      for (std::int64_t r = 2; ipow64(r, k) <= abs_a0; ++r) REQUIRE(ipow64(r, k) != abs_a0);
    const bool even = d.e % 2 == 0;
    REQUIRE((d.kase == KummerCase::OddExponent) == !even);
    REQUIRE((d.kase == KummerCase::Square) == (even && a > 0));
    REQUIRE((d.kase == KummerCase::Twisted) == (even && a < 0));
    REQUIRE(d.s == d.nu(2) + (d.twisted() ? 2 : 1));
    std::uint64_t odd = d.e;
    while (odd % 2 == 0) odd /= 2;
    REQUIRE(d.h == (a > 0 ? d.e : odd));

    const auto prof = entanglement_profile(d);
    const std::int64_t D = prof.D;
    REQUIRE((((D % 4) + 4) % 4 == 0 || ((D % 4) + 4) % 4 == 1));
    REQUIRE((is_square_free(D) || (D % 4 == 0 && is_square_free(D / 4))));
    Integer n = 1;
    for (const auto& [p, l] : prof.levels) {
      REQUIRE((2 * (D < 0 ? -D : D)) % static_cast<std::int64_t>(p) == 0);
      if (p != 2) REQUIRE(l == 1);
      n *= ipow(Integer(p), l);
    }
    REQUIRE(n == prof.n_a);
  }
}

TEST_CASE("entanglement profile examples") {
  auto p2 = entanglement_profile(decompose(2));
  CHECK(p2.D == 8);
  CHECK(p2.level(2) == 3);
  CHECK(p2.n_a == 8);

  auto p5 = entanglement_profile(decompose(5));
  CHECK(p5.D == 5);
  CHECK(p5.level(2) == 1);
  CHECK(p5.level(5) == 1);
  CHECK(p5.n_a == 10);

  auto pm4 = entanglement_profile(decompose(-4));
  CHECK(pm4.D == -8);
  CHECK(pm4.level(2) == 2);
  CHECK(pm4.n_a == 4);

  CHECK(p2.level(3) == 0);
  CHECK(quadratic_discriminant(3) == 12);
  CHECK(quadratic_discriminant(-3) == -3);
  CHECK(quadratic_discriminant(-4) == -4);
  CHECK(quadratic_discriminant(12) == 12);
}

TEST_CASE("k_prime and card_A examples") {
  CHECK(k_prime(decompose(8), 3, 1) == 0);
  CHECK(k_prime(decompose(8), 3, 2) == 1);
  CHECK(k_prime(decompose(-4), 2, 1) == 1);
  CHECK(card_A(decompose(2), 2, 3) == 32);
  CHECK(card_A(decompose(-4), 2, 2) == 4);
  CHECK(card_A(decompose(36), 2, 1) == 1);
  CHECK(card_A_n(decompose(5), 10) == 40);
  CHECK(card_A_n(decompose(7), 1) == 1);
  // #A(4) * #A(3) = 8 * 6
  CHECK(card_A_n(decompose(2), 12) == 48);
}

TEST_CASE("property: both closed forms for #A(p^k) agree on the panel for k <= 12") {
  for (std::int64_t a : testsupport::kPanel) {
    const auto d = decompose(a);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      for (unsigned k = 1; k <= 12; ++k) {
        CAPTURE(a);
        CAPTURE(p);
        CAPTURE(k);
        const Integer P(p);
        Integer matrix_form;
        if (p == 2 && d.twisted()) {
          // 2b + 1 = d mod 2^min(k, nu+1): d is fixed by b mod that power
          const unsigned c = std::min(k, d.nu(2) + 1);
          matrix_form = ipow(P, k) * ipow(P, k) / ipow(P, c);
        } else {
          const unsigned c = std::min(k, d.nu(p));
          matrix_form = ipow(P, k) * euler_phi(ipow(P, k)) / ipow(P, c);
        }
        const Integer kprime_form = ipow(P, k + k_prime(d, p, k) - 1) * (p - 1);
        REQUIRE(matrix_form == kprime_form);
        REQUIRE(card_A(d, p, k) == matrix_form);
      }
    }
  }
}

TEST_CASE("property: #A(p) and #A(2) conditions") {
  for (std::int64_t a : testsupport::kPanel) {
    const auto d = decompose(a);
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
      if (d.nu(p) == 0 && (p != 2 || d.kase != KummerCase::Square)) REQUIRE(card_A(d, p, 1) == Integer(p * (p - 1)));
    }
    const bool square = d.kase == KummerCase::Square;
    CHECK((card_A(d, 2, 1) == 1) == square);
  }
}

TEST_CASE("kummer_degree examples and classical values for a = 2") {
  const auto d2 = decompose(2);
  const auto p2 = entanglement_profile(d2);
  CHECK(kummer_degree(d2, p2, 8) == 16);
  CHECK(kummer_degree(d2, p2, 4) == 8);
  for (std::uint64_t n = 1; n <= 64; ++n) {
    CAPTURE(n);
    const Integer classical = Integer(n) * testsupport::naive_phi(n);
    CHECK(kummer_degree(d2, p2, n) == (n % 8 == 0 ? classical / 2 : classical));
  }
  const auto dm4 = decompose(-4);
  const auto pm4 = entanglement_profile(dm4);
  CHECK(kummer_degree(dm4, pm4, 4) == 2);
  CHECK(kummer_degree(dm4, pm4, 8) == 8);
}

TEST_CASE("property: degree(n) divides degree(m) whenever n | m <= 64") {
  for (std::int64_t a : testsupport::kPanel) {
    const auto d = decompose(a);
    const auto prof = entanglement_profile(d);
    std::vector<Integer> deg(65);
    for (std::uint64_t n = 1; n <= 64; ++n) deg[n] = kummer_degree(d, prof, n);
    for (std::uint64_t n = 1; n <= 64; ++n)
      for (std::uint64_t m = n; m <= 64; m += n) {
        CAPTURE(a);
        CAPTURE(n);
        CAPTURE(m);
        REQUIRE(deg[m] % deg[n] == 0);
      }
  }
}

}  // TEST_SUITE
