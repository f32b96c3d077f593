#include <doctest.h>

#include <cmath>
#include <fstream>

#include "kummerconst/closedforms.hpp"
#include "kummerconst/engine.hpp"
#include "kummerconst/errors.hpp"
#include "kummerconst/factor.hpp"
#include "kummerconst/kummer.hpp"
#include "kummerconst/oracle.hpp"
#include "support.hpp"

using namespace kummerconst;
using namespace kummerconst::engine;
using testsupport::q;

namespace {

GFamily one() { return builtin_family(BuiltinKind::One); }
GFamily mu() { return builtin_family(BuiltinKind::Moebius); }
GFamily laxton() { return builtin_family(BuiltinKind::Laxton); }

// g(p^k) written out from the definitions, independent of LocalSeries.
Rational direct_g(BuiltinKind kind, std::uint64_t p, unsigned k, long z = 0) {
  if (k == 0) return 1;
  switch (kind) {
    case BuiltinKind::Moebius: return k == 1 ? -1 : 0;
    case BuiltinKind::One: return 1;
    case BuiltinKind::Power: return 1 / Rational(ipow(Integer(p), k * z));
    case BuiltinKind::Laxton: return Rational(1 - static_cast<long>(p)) / Rational(ipow(Integer(p), k));
  }
  return 0;
}

EvaluationOptions opts(const Rational& target) { return EvaluationOptions{target, 100'000'000}; }

std::string tabulated_mu_json(std::uint64_t bound) {
  std::string values;
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (!testsupport::naive_is_prime(p)) continue;
    if (!values.empty()) values += ",";
    values += "{\"p\":" + std::to_string(p) + ",\"k\":1,\"g\":\"-1/1\"}";
  }
  return R"({"name":"mu-table","growth":{"C":"1","alpha":"0"},"values":[)" + values + "]}";
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("built-in closed forms equal the definitions up to k = 20") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned k = 0; k <= 20; ++k) {
      CAPTURE(p);
      CAPTURE(k);
      CHECK(one().at_prime_power(p, k) == Enclosure::point(direct_g(BuiltinKind::One, p, k)));
      CHECK(mu().at_prime_power(p, k) == Enclosure::point(direct_g(BuiltinKind::Moebius, p, k)));
      CHECK(laxton().at_prime_power(p, k) == Enclosure::point(direct_g(BuiltinKind::Laxton, p, k)));
      CHECK(builtin_family(BuiltinKind::Power, 2).at_prime_power(p, k) ==
            Enclosure::point(direct_g(BuiltinKind::Power, p, k, 2)));
      // p^(-k/2) for non-integer z
      const Enclosure half = builtin_family(BuiltinKind::Power, q(1, 2)).at_prime_power(p, k);
      const double ref = std::pow(static_cast<double>(p), -0.5 * k);
      CHECK(to_double(half.lo()) <= ref * (1 + 1e-15));
      CHECK(to_double(half.hi()) >= ref * (1 - 1e-15));
      CHECK(half.width() < q(1, 1000000000));
    }
  }
  CHECK(mu().at(30) == Enclosure::point(-1));
  CHECK(mu().at(12) == Enclosure::point(0));
  CHECK(one().at(720) == Enclosure::point(1));
  CHECK(laxton().at(6) == Enclosure::point(q(1, 3)));
  CHECK_THROWS_AS(builtin_family(BuiltinKind::Power, 0), SpecError);
}

TEST_CASE("local_sum examples") {
  const KummerTower t2(2);
  CHECK(local_sum(one(), t2, 2, 3) == Enclosure::point(q(1, 24)));
  CHECK(local_sum(mu(), t2, 5, 0) == Enclosure::point(1 - q(1, 20)));
  CHECK(local_sum(mu(), t2, 5, 2) == Enclosure::point(0));
  for (std::uint64_t p : {3, 5, 7, 11}) {
    const Rational P(p);
    CHECK(local_sum(one(), t2, p, 0) == Enclosure::point(1 + P / ((P - 1) * (P * P - 1))));
    CHECK(local_sum(mu(), t2, p, 0) == Enclosure::point(1 - 1 / (P * (P - 1))));
  }
  CHECK(local_sum(mu(), KummerTower(36), 2, 0) == Enclosure::point(0));
}

TEST_CASE("property: local_sum agrees with 40-term direct summation") {
  const std::vector<std::pair<BuiltinKind, long>> kinds = {
      {BuiltinKind::One, 0}, {BuiltinKind::Moebius, 0}, {BuiltinKind::Laxton, 0}, {BuiltinKind::Power, 1}};
  for (std::int64_t a : testsupport::kPanel) {
    const KummerTower tower(a);
    for (const auto& [kind, z] : kinds) {
      const GFamily fam = builtin_family(kind, z);
      for (std::uint64_t p : {2, 3, 5, 7}) {
        for (unsigned L = 0; L <= 3; ++L) {
          Rational direct = 0;
          for (unsigned k = L; k < L + 40; ++k) direct += direct_g(kind, p, k, z) / Rational(tower.card(p, k));
          // |g| <= 1 and #A(p^k) >= p^(2k-2-c) with c = nu_p(e) + 1
          const unsigned c = tower.decomposition().nu(p) + 1;
          const Rational rest = Rational(ipow(Integer(p), c)) * 2 / Rational(ipow(Integer(p), 2 * (L + 40) - 2));
          const Enclosure got = local_sum(fam, tower, p, L);
          CAPTURE(a);
          CAPTURE(fam.name);
          CAPTURE(p);
          CAPTURE(L);
          REQUIRE(got.is_point());
          REQUIRE(abs(got.lo() - direct) <= rest);
        }
      }
    }
  }
}

TEST_CASE("mobius_inverse_family examples") {
  const auto divisor = mobius_inverse_family("d", [](std::uint64_t, unsigned k) { return Rational(k + 1); },
                                             GrowthBound{1, 0}, 20);
  const auto indicator = mobius_inverse_family("1_{1}", [](std::uint64_t, unsigned k) { return Rational(k == 0 ? 1 : 0); },
                                               GrowthBound{1, 0}, 20);
  const auto inverse = mobius_inverse_family(
      "p^-k", [](std::uint64_t p, unsigned k) -> Rational { return 1 / Rational(ipow(Integer(p), k)); }, GrowthBound{1, 0}, 20);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned k = 1; k <= 20; ++k) {
      CHECK(divisor.at_prime_power(p, k) == Enclosure::point(1));
      CHECK(indicator.at_prime_power(p, k) == Enclosure::point(direct_g(BuiltinKind::Moebius, p, k)));
      CHECK(inverse.at_prime_power(p, k) == Enclosure::point(direct_g(BuiltinKind::Laxton, p, k)));
    }
  }
  CHECK_THROWS_AS(mobius_inverse_family("x", [](std::uint64_t, unsigned) { return Rational(1); }, std::nullopt), SpecError);
  const auto bad = mobius_inverse_family("x", [](std::uint64_t, unsigned) { return Rational(2); }, GrowthBound{1, 0});
  CHECK_THROWS_AS(bad.series(3), SpecError);

  // the divisor family has the same local sums as g = 1 up to the 20-term head
  const KummerTower t(3);
  const Enclosure tabulated = local_sum(divisor, t, 5, 0);
  CHECK(tabulated.contains(local_sum(one(), t, 5, 0).lo()));
  CHECK(tabulated.width() < q(1, 1000000) * q(1, 1000000) * q(1, 1000000));
}

TEST_CASE("evaluate_constant examples") {
  const auto r_one = evaluate_constant(one(), KummerTower(2), opts(q(1, 100000)));
  CHECK(r_one.precision_reached);
  CHECK(r_one.value.width() <= q(1, 100000));
  CHECK(r_one.value.intersects(Enclosure(q(22589, 10000), q(22590, 10000))));
  REQUIRE(r_one.correction);
  CHECK(*r_one.correction == q(41, 40));
  CHECK(r_one.vanishing->kind == VanishingKind::NonVanishing);

  const auto r36 = evaluate_constant(mu(), KummerTower(36), opts(q(1, 1000000)));
  CHECK(r36.value == Enclosure::point(0));
  CHECK(r36.vanishing->kind == VanishingKind::VanishGlobal);

  const auto r_mu = evaluate_constant(mu(), KummerTower(2), opts(q(1, 1000000)));
  CHECK(r_mu.value.contains(q(3739558, 10000000)));
  CHECK(r_mu.value.width() <= q(1, 1000000));
}

TEST_CASE("property: result structure") {
  for (std::int64_t a : testsupport::kPanel) {
    for (const GFamily& fam : {one(), mu(), laxton()}) {
      const auto r = evaluate_constant(fam, KummerTower(a), opts(q(1, 1000)));
      CAPTURE(a);
      CAPTURE(fam.name);
      CHECK(r.value.lo() <= r.value.hi());
      CHECK(r.bracket == r.entangled_naive + r.entangled_shifted);
      CHECK(r.finite_part == r.generic_product * r.bracket);
      if (r.correction) CHECK(r.bracket == *r.correction * r.entangled_naive);
      if (!r.value.is_zero()) CHECK(r.value.contains(r.finite_part));
    }
  }
}

TEST_CASE("exactness: a prime cap below 2De is refused") {
  CHECK_THROWS_AS(evaluate_constant(one(), KummerTower(5), EvaluationOptions{q(1, 1000), 3}), SpecError);
  CHECK_THROWS_AS(evaluate_constant(one(), KummerTower(7 * 7 * 7), EvaluationOptions{q(1, 1000), 5}), SpecError);
  CHECK_THROWS_AS(evaluate_constant(one(), KummerTower(2), EvaluationOptions{0, 1000}), SpecError);
  CHECK_NOTHROW(evaluate_constant(one(), KummerTower(5), EvaluationOptions{q(1, 10), 5}));
}

TEST_CASE("a small prime cap reports precision_reached = false with a valid enclosure") {
  const auto r = evaluate_constant(one(), KummerTower(2), EvaluationOptions{q(1, 1000000), 2000});
  CHECK_FALSE(r.precision_reached);
  CHECK(r.P_used == 2000);
  CHECK(r.value.contains(q(22589527, 10000000)));
}

TEST_CASE("growth bounds outside the convergence range are refused") {
  GFamily fast = one();
  fast.growth = GrowthBound{1, 1};
  CHECK_THROWS_AS(evaluate_constant(fast, KummerTower(2), opts(q(1, 100))), SpecError);
  fast.growth = GrowthBound{1, q(1, 2)};
  CHECK_NOTHROW(evaluate_constant(fast, KummerTower(2), opts(q(1, 10))));
}

TEST_CASE("correction_factor and vanishing_check") {
  const auto c5 = correction_factor(mu(), KummerTower(5));
  REQUIRE(c5.kind == CorrectionKind::Exact);
  CHECK(*c5.exact == q(20, 19));

  const auto c36 = correction_factor(mu(), KummerTower(36));
  CHECK(c36.kind == CorrectionKind::NotDefined);
  CHECK(to_string(CorrectionKind::NotDefined) == "NotDefined");

  CHECK(vanishing_check(mu(), KummerTower(36)).kind == VanishingKind::VanishGlobal);
  CHECK(vanishing_check(one(), KummerTower(2)).kind == VanishingKind::NonVanishing);
  CHECK(vanishing_check(mu(), KummerTower(2)).kind == VanishingKind::NonVanishing);
  CHECK(vanishing_check(mu(), KummerTower(36)).tag() == "VanishGlobal");

  // g(3) = -6 = -#A(3) for a = 2, g = 0 elsewhere: F_3(0) = 0
  GFamily killer;
  killer.name = "killer";
  killer.growth = GrowthBound{6, 0};
  killer.series = [](std::uint64_t p) {
    if (p == 3) return LocalSeries{{1, -6}, GeometricTail{0, Enclosure::point(0)}};
    return LocalSeries{{1}, GeometricTail{0, Enclosure::point(0)}};
  };
  const auto v = vanishing_check(killer, KummerTower(2));
  CHECK(v.kind == VanishingKind::VanishLocal);
  CHECK(v.prime == 3);
  CHECK(v.tag() == "VanishLocal(3)");
  const auto r = evaluate_constant(killer, KummerTower(2), opts(q(1, 100)));
  CHECK(r.value == Enclosure::point(0));
  CHECK(r.vanishing->kind == VanishingKind::VanishLocal);
  CHECK(correction_factor(killer, KummerTower(2)).kind == CorrectionKind::Exact);
}

TEST_CASE("JSON families") {
  const GFamily fam = family_from_json(tabulated_mu_json(50));
  CHECK(fam.name == "mu-table");
  CHECK(fam.table_bound == std::optional<std::uint64_t>(47));
  CHECK(fam.at(30) == Enclosure::point(-1));
  const auto r = evaluate_constant(fam, KummerTower(3), opts(q(1, 1000)));
  CHECK_FALSE(r.precision_reached);
  CHECK(r.P_used == 47);
  CHECK(r.value.contains(q(3739558, 10000000)));

  const std::string path = "kummerconst_test_family.json";
  {
    std::ofstream out(path);
    out << tabulated_mu_json(20);
  }
  CHECK(family_from_file(path).table_bound == std::optional<std::uint64_t>(19));
  std::remove(path.c_str());
  CHECK_THROWS_AS(family_from_file("/nonexistent/family.json"), SpecError);

  const std::string head = R"({"name":"x","growth":{"C":"1","alpha":"0"},"values":)";
  CHECK_THROWS_AS(family_from_json("{"), SpecError);
  CHECK_THROWS_AS(family_from_json(R"({"name":"x","values":[]})"), SpecError);
  CHECK_THROWS_AS(family_from_json(head + R"([{"p":4,"k":1,"g":"1"}]})"), SpecError);
  CHECK_THROWS_AS(family_from_json(head + R"([{"p":2,"k":1,"g":"1"},{"p":2,"k":1,"g":"1"}]})"), SpecError);
  CHECK_THROWS_AS(family_from_json(head + R"([{"p":2,"k":1,"g":"3"}]})"), SpecError);
  CHECK_THROWS_AS(family_from_json(head + R"([{"p":3,"k":1,"g":"1"}]})"), SpecError);
  CHECK_THROWS_AS(family_from_json(head + R"([{"p":2,"k":2,"g":"1"}]})"), SpecError);
  CHECK_THROWS_AS(family_from_json(head + R"([{"p":2,"k":1,"g":"x"}]})"), SpecError);
  CHECK_THROWS_AS(evaluate_constant(family_from_json(tabulated_mu_json(5)), KummerTower(7), opts(q(1, 10))), SpecError);
}

TEST_CASE("property: partial sums plus tail meet the engine enclosure (N = 1000)") {
  for (std::int64_t a : testsupport::kPanel) {
    const KummerTower tower(a);
    for (const GFamily& fam : {one(), mu(), laxton()}) {
      const auto r = evaluate_constant(fam, tower, opts(q(1, 10000)));
      const auto ps = oracle::partial_sum(fam, tower, 1000);
      CAPTURE(a);
      CAPTURE(fam.name);
      CHECK(ps.with_tail().intersects(r.value));
    }
  }
}

}  // TEST_SUITE
