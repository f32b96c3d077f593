#include <doctest.h>

#include <cmath>
#include <vector>

#include "kummerconst/closedforms.hpp"
#include "kummerconst/engine.hpp"
#include "kummerconst/errors.hpp"
#include "kummerconst/factor.hpp"
#include "kummerconst/kummer.hpp"
#include "kummerconst/oracle.hpp"
#include "kummerconst/sieve.hpp"
#include "support.hpp"

using namespace kummerconst;
using namespace kummerconst::closedforms;
using testsupport::q;

namespace {

struct Input {
  kummer::KummerDecomposition dec;
  kummer::EntanglementProfile prof;
};

Input input(std::int64_t a) {
  auto d = kummer::decompose(a);
  return {d, kummer::entanglement_profile(d)};
}

engine::EvaluationOptions opts(const Rational& t) { return engine::EvaluationOptions{t, 100'000'000}; }

}  // namespace

TEST_SUITE("closedforms") {

TEST_CASE("universal constant") {
  const Enclosure u = universal_constant(q(1, 1000000));
  CHECK(u.width() <= q(1, 1000000));
  CHECK(u.intersects(Enclosure(q(2203856, 1000000), q(2203857, 1000000))));
  const Enclosure coarse = universal_constant(1);
  CHECK(coarse.width() <= 1);
  CHECK(coarse.intersects(u));
  CHECK_THROWS_AS(universal_constant(q(1, 1000000), 1000), PrecisionNotReached);
}

TEST_CASE("universal constant against the series sum 1/(n phi(n))") {
  const std::uint64_t N = 100000;
  std::vector<std::uint64_t> phi(N + 1);
  for (std::uint64_t n = 0; n <= N; ++n) phi[n] = n;
  for (std::uint64_t p = 2; p <= N; ++p)
    if (phi[p] == p)
      for (std::uint64_t m = p; m <= N; m += p) phi[m] -= phi[m] / p;
  long double s = 0;
  for (std::uint64_t n = N; n >= 1; --n) s += 1.0L / (static_cast<long double>(n) * phi[n]);
  // phi(n) >= sqrt(n / 2), so the terms beyond N sum to at most 2 sqrt(2 / N)
  const double tail = 2.0 * std::sqrt(2.0 / N);
  const Enclosure u = universal_constant(q(1, 1000000));
  CHECK(to_double(u.hi()) >= static_cast<double>(s) - 1e-12);
  CHECK(to_double(u.lo()) <= static_cast<double>(s) + tail);
  CHECK(to_double(u.lo()) - static_cast<double>(s) < 5e-5);
}

TEST_CASE("titchmarsh examples") {
  const auto t2 = titchmarsh_closed(input(2).dec, input(2).prof, q(1, 100000));
  const auto tm2 = titchmarsh_closed(input(-2).dec, input(-2).prof, q(1, 100000));
  CHECK(*t2.correction == q(41, 40));
  CHECK(*tm2.correction == q(41, 40));
  CHECK(t2.value == tm2.value);
  CHECK(t2.value.intersects(Enclosure(q(22589, 10000), q(22590, 10000))));

  const auto tm4 = titchmarsh_closed(input(-4).dec, input(-4).prof, q(1, 100000));
  const auto e = engine::evaluate_constant(builtin_family(engine::BuiltinKind::One), engine::KummerTower(-4), opts(q(1, 10000)));
  CHECK(tm4.value.intersects(e.value));
  CHECK(to_double(tm4.value.midpoint()) == doctest::Approx(2.8650).epsilon(0.001));
}

TEST_CASE("property: with nu_p(e) = 0 everywhere the all-primes product is the universal constant") {
  for (std::int64_t a : {2, -2, 3, 5, -5, 6, 7, -7, 10}) {
    const auto in = input(a);
    REQUIRE(in.dec.e == 1);
    const auto t = titchmarsh_closed(in.dec, in.prof, q(1, 10000));
    CHECK(t.generic_product.intersects(universal_constant(q(1, 10000))));
  }
}

TEST_CASE("property: titchmarsh closed form agrees with the engine on the panel") {
  for (std::int64_t a : testsupport::kPanel) {
    const auto in = input(a);
    const auto closed = titchmarsh_closed(in.dec, in.prof, q(1, 100000));
    const auto eng = engine::evaluate_constant(builtin_family(engine::BuiltinKind::One), engine::KummerTower(a), opts(q(1, 100000)));
    CAPTURE(a);
    CHECK(closed.value.intersects(eng.value));
    REQUIRE(eng.correction);
    CHECK(*closed.correction == *eng.correction);
  }
}

TEST_CASE("a_sf and artin_A") {
  CHECK(a_sf(8) == 2);
  CHECK(a_sf(-12) == -3);
  CHECK(a_sf(5) == 5);
  CHECK_THROWS_AS(a_sf(0), DomainError);

  const Enclosure A2 = artin_A(input(2).dec, q(1, 1000000));
  CHECK(A2.contains(q(3739558, 10000000)));
  CHECK(A2.width() <= q(1, 1000000));
  CHECK(artin_A(input(36).dec, q(1, 1000)) == Enclosure::point(0));

  // h = 3: the factor at 3 is 1 - 1/2 instead of 1 - 1/6
  const Enclosure A8 = artin_A(input(8).dec, q(1, 1000000));
  CHECK(A8.intersects(A2 * q(3, 5)));
}

TEST_CASE("artin_E examples and errors") {
  CHECK(artin_E(5) == q(20, 19));
  CHECK(artin_E(-3) == q(6, 5));
  // mu(21) = 1, p = 3 gives 5, p = 7 gives 41
  CHECK(artin_E(21) == 1 - q(1, 5 * 41));
  CHECK(artin_E(21) == artin_E_product_form(input(21).dec, input(21).prof));
  CHECK(artin_E(13) == artin_E_product_form(input(13).dec, input(13).prof));
  CHECK(artin_E_product_form(input(5).dec, input(5).prof) == q(20, 19));
  CHECK_THROWS_AS(artin_E(2), DomainError);
  CHECK_THROWS_AS(artin_E_product_form(input(36).dec, input(36).prof), DomainError);
  CHECK_THROWS_AS(artin_E_product_form(input(3).dec, input(3).prof), DomainError);
}

TEST_CASE("property: both E forms agree for squarefree a = 1 (mod 4), |a| <= 200") {
  int checked = 0;
  for (std::int64_t a = -200; a <= 200; ++a) {
    if (a == 1 || a == 0 || a == -1) continue;
    if (((a % 4) + 4) % 4 != 1) continue;
    if (squarefree_kernel(Integer(a)) != a) continue;
    const auto in = input(a);
    CAPTURE(a);
    CHECK(artin_E(a) == artin_E_product_form(in.dec, in.prof));
    ++checked;
  }
  CHECK(checked == 80);
}

TEST_CASE("artin_delta") {
  const Enclosure d2 = artin_delta(input(2).dec, q(1, 1000000));
  CHECK(d2 == artin_A(input(2).dec, q(1, 1000000)));
  const Enclosure d5 = artin_delta(input(5).dec, q(1, 1000000));
  CHECK(d5.intersects(artin_A(input(5).dec, q(1, 1000000)) * q(20, 19)));
  CHECK(d5.width() <= q(1, 1000000));
  CHECK(artin_delta(input(36).dec, q(1, 1000)) == Enclosure::point(0));
}

TEST_CASE("property: artin_delta meets the engine under g = mu on the panel") {
  for (std::int64_t a : testsupport::kPanel) {
    const auto in = input(a);
    const Enclosure closed = artin_delta(in.dec, q(1, 1000000));
    const auto eng = engine::evaluate_constant(builtin_family(engine::BuiltinKind::Moebius), engine::KummerTower(a),
                                               opts(q(1, 1000000)));
    CAPTURE(a);
    CHECK(closed.intersects(eng.value));
    const std::int64_t sf = a_sf(a);
    if (((sf % 4) + 4) % 4 == 1 && in.dec.e % 2 == 1) {
      REQUIRE(eng.correction);
      CHECK(*eng.correction == artin_E(a));
    }
  }
}

}  // TEST_SUITE
