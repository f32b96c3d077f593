#include "kummerconst/engine.hpp"

#include <algorithm>
#include <cmath>

#include "kummerconst/bigfloat.hpp"
#include "kummerconst/errors.hpp"
#include "kummerconst/euler_product.hpp"
#include "kummerconst/factor.hpp"
#include "kummerconst/sieve.hpp"

namespace kummerconst::engine {

namespace {

constexpr mpfr_prec_t kFoldPrec = 160;
constexpr std::uint64_t kFirstCutoff = 1000;

std::uint64_t largest_prime_factor(const Integer& n) {
  const auto f = factorize(n);
  return f.factors.empty() ? 1 : f.factors.back().prime.get_ui();
}

Enclosure product_over_levels(const GFamily& fam, const GroupTower& tower, bool shifted) {
  Enclosure out = Enclosure::point(1);
  for (const auto& [p, l] : tower.levels()) out *= local_sum(fam, tower, p, shifted ? l : 0);
  return out;
}

void check_growth(const GrowthBound& growth, const GroupTower& tower) {
  if (growth.C <= 0) throw SpecError("growth constant C must be positive");
  const unsigned d = tower.growth_degree();
  if (growth.alpha >= d - 1)
    throw SpecError("growth exponent alpha = " + to_string(growth.alpha) + " must be below " + std::to_string(d - 1) +
                    " for the prime tail to converge");
}

}  // namespace

// ---------------------------------------------------------------------------

KummerTower::KummerTower(kummer::KummerDecomposition dec, kummer::EntanglementProfile profile)
    : dec_(std::move(dec)), prof_(std::move(profile)) {
  const std::uint64_t absD = static_cast<std::uint64_t>(prof_.D < 0 ? -prof_.D : prof_.D);
  special_ = std::max<std::uint64_t>({2, largest_prime_factor(Integer(absD)), largest_prime_factor(Integer(dec_.e))});
}

KummerTower::KummerTower(std::int64_t a) : KummerTower(kummer::decompose(a), kummer::entanglement_profile(kummer::decompose(a))) {}

Integer KummerTower::card(std::uint64_t p, unsigned k) const { return kummer::card_A(dec_, p, k); }

Integer KummerTower::degree(std::uint64_t n) const { return kummer::kummer_degree(dec_, prof_, n); }

unsigned KummerTower::regular_from(std::uint64_t p) const { return dec_.nu(p) + 1; }

Rational KummerTower::regular_base(std::uint64_t p) const {
  return Rational(p - 1) / ipow(Integer(p), dec_.nu(p) + 1);
}

Rational KummerTower::inverse_base_bound(std::uint64_t m) const { return Rational(m) / Rational(m - 1); }

// ---------------------------------------------------------------------------

Enclosure local_sum(const GFamily& fam, const GroupTower& tower, std::uint64_t p, unsigned L) {
  return local_sum(fam.series(p), fam.growth, tower, p, L);
}

Enclosure local_sum(const LocalSeries& series, const GrowthBound& growth, const GroupTower& tower, std::uint64_t p,
                    unsigned L) {
  if (series.head.empty() || series.head[0] != 1) throw SpecError("local series must start with g(1) = 1");
  const unsigned d = tower.growth_degree();
  const unsigned H = static_cast<unsigned>(series.head.size());
  const unsigned K = std::max({L, tower.regular_from(p), H});
  const Rational base = tower.regular_base(p);
  const Rational pd(ipow(Integer(p), d));

  if (series.geometric) {
    const GeometricTail& geo = *series.geometric;
    if (geo.ratio.lo() < 0) throw SpecError("geometric ratio must be non-negative");
    // Every term is monotone in the ratio, in the direction of sign(coef).
    auto eval = [&](const Rational& r) {
      Rational sum = 0;
      for (unsigned k = L; k < K; ++k) {
        Rational g = k < H ? series.head[k] : Rational(geo.coef * ipow(r, k));
        if (g != 0) sum += g / Rational(tower.card(p, k));
      }
      if (geo.coef != 0) {
        const Rational q = r / pd;
        if (q >= 1) throw SpecError("geometric ratio too large for a convergent local sum at p = " + std::to_string(p));
        sum += geo.coef / base * ipow(q, K) / (1 - q);
      }
      return sum;
    };
    if (geo.ratio.is_point()) return Enclosure::point(eval(geo.ratio.lo()));
    const Rational a = eval(geo.ratio.lo()), b = eval(geo.ratio.hi());
    return a <= b ? Enclosure(a, b) : Enclosure(b, a);
  }

  Rational center = 0;
  for (unsigned k = L; k < H; ++k)
    if (series.head[k] != 0) center += series.head[k] / Rational(tower.card(p, k));
  Rational radius = 0;
  const Rational P(p);
  for (unsigned k = std::max(L, H); k < K; ++k)
    radius += growth.C * pow_bound(P, growth.alpha * k, MPFR_RNDU) / Rational(tower.card(p, k));
  // k >= K: card = base p^(dk), so the terms are bounded by C/base * w^k.
  const Rational w = pow_bound(P, growth.alpha - d, MPFR_RNDU);
  if (w >= 1) throw SpecError("growth bound does not give a convergent local sum at p = " + std::to_string(p));
  radius += growth.C / base * pow_bound(P, (growth.alpha - d) * K, MPFR_RNDU) / (1 - w);
  return Enclosure::around(center, radius);
}

Rational prime_tail_bound(const GrowthBound& growth, const GroupTower& tower, std::uint64_t P) {
  check_growth(growth, tower);
  if (P < 2) throw DomainError("prime_tail_bound requires P >= 2");
  const Rational beta = Rational(tower.growth_degree()) - growth.alpha;
  const Rational m(P + 1);
  const Rational w = pow_bound(m, -beta, MPFR_RNDU);
  // sum over integers n > P of n^-beta <= integral from P to infinity
  const Rational integral = pow_bound(Rational(P), 1 - beta, MPFR_RNDU) / (beta - 1);
  return growth.C * tower.inverse_base_bound(P + 1) / (1 - w) * integral;
}

std::string VanishingStatus::tag() const {
  switch (kind) {
    case VanishingKind::NonVanishing: return "NonVanishing";
    case VanishingKind::VanishLocal: return "VanishLocal(" + std::to_string(prime) + ")";
    case VanishingKind::VanishGlobal: return "VanishGlobal";
  }
  return "?";
}

// ---------------------------------------------------------------------------

ConstantResult evaluate_constant(const GFamily& fam, const GroupTower& tower, const EvaluationOptions& opts) {
  if (opts.target_error <= 0) throw SpecError("target error must be positive");
  check_growth(fam.growth, tower);
  const std::uint64_t special = tower.special_prime_bound();
  if (opts.P_max < special)
    throw SpecError("P_max = " + std::to_string(opts.P_max) + " is below the largest prime dividing 2De (" +
                    std::to_string(special) + ")");
  std::uint64_t P_cap = opts.P_max;
  if (fam.table_bound) {
    if (*fam.table_bound < special)
      throw SpecError("tabulated family stops at p = " + std::to_string(*fam.table_bound) +
                      ", below the largest prime dividing 2De (" + std::to_string(special) + ")");
    P_cap = std::min(P_cap, *fam.table_bound);
  }

  ConstantResult res;
  res.entangled_naive = product_over_levels(fam, tower, false);
  res.entangled_shifted = product_over_levels(fam, tower, true);
  res.bracket = res.entangled_naive + res.entangled_shifted;
  if (res.entangled_naive.is_point() && res.bracket.is_point() && !res.entangled_naive.is_zero())
    res.correction = res.bracket.lo() / res.entangled_naive.lo();

  if (res.bracket.is_zero()) {
    res.value = res.finite_part = Enclosure::point(0);
    res.generic_product = Enclosure::point(1);
    res.P_used = special;
    res.vanishing = VanishingStatus{VanishingKind::VanishGlobal, 0};
    return res;
  }

  const auto& levels = tower.levels();
  ProductAccumulator acc(kFoldPrec);
  std::uint64_t folded = 1;
  std::uint64_t zero_prime = 0;
  auto fold_to = [&](std::uint64_t hi) {
    SegmentedSieve sieve(folded + 1, hi);
    for (auto seg = sieve.next(); !seg.empty() && zero_prime == 0; seg = sieve.next()) {
      for (std::uint64_t p : seg) {
        if (levels.count(p)) continue;
        Enclosure F = local_sum(fam, tower, p, 0);
        if (F.is_zero()) {
          zero_prime = p;
          break;
        }
        acc.multiply(F);
      }
    }
    folded = hi;
  };

  const double beta_minus_one = to_double(Rational(tower.growth_degree()) - fam.growth.alpha) - 1;
  std::uint64_t next = std::min(P_cap, std::max(special, kFirstCutoff));
  for (;;) {
    if (next > folded) fold_to(next);
    if (zero_prime != 0) {
      res.value = res.finite_part = res.generic_product = Enclosure::point(0);
      res.P_used = zero_prime;
      res.vanishing = VanishingStatus{VanishingKind::VanishLocal, zero_prime};
      return res;
    }
    res.P_used = folded;
    res.generic_product = acc.value();
    res.finite_part = res.generic_product * res.bracket;
    res.tail_bound = prime_tail_bound(fam.growth, tower, folded);
    if (res.tail_bound < 1) {
      res.value = res.finite_part * tail_factor(res.tail_bound);
      if (res.value.width() <= opts.target_error) break;
      if (res.finite_part.width() > opts.target_error / 2) {
        // local factors themselves are too wide; a larger cutoff cannot help
        res.precision_reached = false;
        break;
      }
    }
    if (folded >= P_cap) {
      if (res.tail_bound >= 1)
        throw ResourceLimit("prime tail bound stays >= 1 up to P = " + std::to_string(folded));
      res.precision_reached = false;
      break;
    }
    double factor = 4;
    if (res.tail_bound < 1) {
      const double ratio = to_double(res.value.width() / opts.target_error);
      factor = std::pow(1.5 * ratio, 1.0 / beta_minus_one);
    }
    const double want = static_cast<double>(folded) * std::max(2.0, factor);
    next = want >= static_cast<double>(P_cap) ? P_cap : static_cast<std::uint64_t>(want);
  }
  res.vanishing = VanishingStatus{res.value.is_zero() ? VanishingKind::VanishGlobal : VanishingKind::NonVanishing, 0};
  return res;
}

ConstantResult evaluate_constant(const GFamily& fam, const kummer::KummerDecomposition& dec,
                                 const kummer::EntanglementProfile& profile, const Rational& target_error,
                                 std::uint64_t P_max) {
  return evaluate_constant(fam, KummerTower(dec, profile), EvaluationOptions{target_error, P_max});
}

// ---------------------------------------------------------------------------

std::string to_string(CorrectionKind kind) {
  switch (kind) {
    case CorrectionKind::Exact: return "Exact";
    case CorrectionKind::Enclosed: return "Enclosed";
    case CorrectionKind::NotCorrectable: return "NotCorrectable";
    case CorrectionKind::NotDefined: return "NotDefined";
  }
  return "?";
}

CorrectionOutcome correction_factor(const GFamily& fam, const GroupTower& tower) {
  const Integer n = tower.conductor();
  Enclosure bracket = product_over_levels(fam, tower, false) + product_over_levels(fam, tower, true);

  // #G(p^k) = #A(p^k) / 2 exactly when the conductor divides p^k, which for
  // a conductor p^j means k >= j. So F^G_p(0) = F_p(0) + F_p(j).
  Enclosure naive_G = Enclosure::point(1);
  bool some_zero = false;
  for (const auto& [p, l] : tower.levels()) {
    Enclosure F = local_sum(fam, tower, p, 0);
    Integer m = n;
    unsigned j = 0;
    while (m % p == 0) {
      m /= p;
      ++j;
    }
    if (m == 1) F += local_sum(fam, tower, p, j);
    if (F.is_zero()) some_zero = true;
    else if (F.contains_zero())
      throw SpecError("correction_factor: F^G_" + std::to_string(p) + "(0) is not separated from 0");
    naive_G *= F;
  }

  CorrectionOutcome out;
  if (some_zero) {
    const VanishingStatus v = vanishing_check(fam, tower);
    out.kind = v.kind == VanishingKind::NonVanishing ? CorrectionKind::NotCorrectable : CorrectionKind::NotDefined;
    return out;
  }
  Enclosure ratio = bracket * naive_G.reciprocal();
  if (ratio.is_point()) {
    out.kind = CorrectionKind::Exact;
    out.exact = ratio.lo();
  } else {
    out.kind = CorrectionKind::Enclosed;
  }
  out.enclosure = ratio;
  return out;
}

VanishingStatus vanishing_check(const GFamily& fam, const GroupTower& tower) {
  check_growth(fam.growth, tower);
  const std::uint64_t special = tower.special_prime_bound();
  // Beyond P0 every |F_p(0) - 1| is below the tail bound, hence below 1.
  std::uint64_t P0 = std::max<std::uint64_t>(special, 2);
  while (prime_tail_bound(fam.growth, tower, P0) >= 1) {
    if (P0 > (std::uint64_t{1} << 32)) throw ResourceLimit("vanishing_check: tail bound does not drop below 1");
    P0 *= 2;
  }
  if (fam.table_bound && *fam.table_bound < P0)
    throw SpecError("vanishing_check: table ends at p = " + std::to_string(*fam.table_bound) +
                    " before the tail bound drops below 1");

  const auto& levels = tower.levels();
  std::uint64_t local = 0;
  for_each_prime(2, P0, [&](std::uint64_t p) {
    if (local != 0 || levels.count(p)) return;
    Enclosure F = local_sum(fam, tower, p, 0);
    if (F.is_zero()) local = p;
    else if (F.contains_zero())
      throw SpecError("vanishing_check: F_" + std::to_string(p) + "(0) is not separated from 0");
  });
  if (local != 0) return {VanishingKind::VanishLocal, local};

  Enclosure bracket = product_over_levels(fam, tower, false) + product_over_levels(fam, tower, true);
  if (bracket.is_zero()) return {VanishingKind::VanishGlobal, 0};
  if (bracket.contains_zero()) throw SpecError("vanishing_check: entangled bracket is not separated from 0");
  return {VanishingKind::NonVanishing, 0};
}

}  // namespace kummerconst::engine
