#include "kummerconst/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "kummerconst/errors.hpp"
#include "kummerconst/euler_product.hpp"
#include "kummerconst/factor.hpp"
#include "kummerconst/log_integral.hpp"
#include "kummerconst/sieve.hpp"

namespace kummerconst::oracle {

namespace {

std::uint64_t checked_prime_power(std::uint64_t p, unsigned k, std::uint64_t budget) {
  std::uint64_t m = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (m > budget / p) throw ResourceLimit("p^k = " + std::to_string(p) + "^" + std::to_string(k) + " exceeds the enumeration budget");
    m *= p;
  }
  return m;
}

std::uint64_t inverse_mod(std::uint64_t d, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(d % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw IntegrityError("inverse_mod: not a unit");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::string show(const GroupElement& g) {
  return "(" + std::to_string(g.b) + "," + std::to_string(g.d) + ") mod " + std::to_string(g.modulus);
}

std::uint64_t key(const GroupElement& g) { return g.b * g.modulus + g.d; }

// Lower triangular 2x2 product, written out as a full matrix product.
GroupElement matrix_product(const GroupElement& x, const GroupElement& y) {
  const std::uint64_t m = x.modulus;
  const std::uint64_t A[2][2] = {{1, 0}, {x.b, x.d}};
  const std::uint64_t B[2][2] = {{1, 0}, {y.b, y.d}};
  std::uint64_t C[2][2] = {{0, 0}, {0, 0}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) C[i][j] = (C[i][j] + mulmod(A[i][l], B[l][j], m)) % m;
  if (C[0][0] != 1 % m || C[0][1] != 0)
    throw VerificationFailure("matrix product left the lower triangular shape: " + show(x) + " * " + show(y));
  return {C[1][0], C[1][1], m};
}

Rational tree_sum(std::vector<Rational> terms) {
  if (terms.empty()) return 0;
  while (terms.size() > 1) {
    std::size_t out = 0;
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) terms[out++] = terms[i] + terms[i + 1];
    if (terms.size() % 2 == 1) terms[out++] = std::move(terms.back());
    terms.resize(out);
  }
  return terms.front();
}

// Smallest prime factor table for n <= N.
std::vector<std::uint32_t> spf_table(std::uint64_t N) {
  std::vector<std::uint32_t> spf(N + 1, 0);
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= N; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

Rational abs_lower(const Enclosure& e) {
  if (e.contains_zero()) return 0;
  return e.lo() > 0 ? e.lo() : Rational(-e.hi());
}

}  // namespace

GroupElement compose(const GroupElement& x, const GroupElement& y) {
  if (x.modulus != y.modulus) throw IntegrityError("compose: moduli differ");
  const std::uint64_t m = x.modulus;
  return {(x.b + mulmod(x.d, y.b, m)) % m, mulmod(x.d, y.d, m), m};
}

std::vector<GroupElement> enumerate_A(const kummer::KummerDecomposition& dec, std::uint64_t p, unsigned k,
                                      std::uint64_t budget) {
  if (k == 0) throw DomainError("enumerate_A requires k >= 1");
  if (!is_prime(p)) throw DomainError("enumerate_A: " + std::to_string(p) + " is not prime");
  const std::uint64_t M = checked_prime_power(p, k, budget);
  const bool twisted2 = p == 2 && dec.twisted();
  const unsigned v = dec.nu(p);
  const std::uint64_t c = checked_prime_power(p, std::min(k, twisted2 ? v + 1 : v), budget);

  std::vector<GroupElement> out;
  for (std::uint64_t b = 0; b < M; ++b) {
    for (std::uint64_t d = 1; d < M; ++d) {
      if (d % p == 0) continue;
      const std::uint64_t lhs = twisted2 ? 2 * b + 1 : b + 1;
      if ((lhs + c - d % c) % c != 0) continue;
      out.push_back({b, d, M});
    }
  }
  return out;
}

VerificationReport verify_group(const kummer::KummerDecomposition& dec, std::uint64_t p, unsigned k,
                                std::uint64_t budget) {
  VerificationReport rep;
  rep.p = p;
  rep.k = k;
  const auto elems = enumerate_A(dec, p, k, budget);
  const std::uint64_t M = checked_prime_power(p, k, budget);
  rep.size = elems.size();
  rep.expected = kummer::card_A(dec, p, k);
  rep.size_ok = Integer(static_cast<unsigned long>(rep.size)) == rep.expected;
  if (!rep.size_ok)
    throw VerificationFailure("|A(" + std::to_string(p) + "^" + std::to_string(k) + ")| = " + std::to_string(rep.size) +
                              " but card_A = " + to_string(rep.expected));

  std::unordered_set<std::uint64_t> members;
  members.reserve(elems.size() * 2);
  for (const auto& g : elems) members.insert(key(g));
  auto in = [&](const GroupElement& g) { return members.count(key(g)) > 0; };

  const GroupElement id{0, 1 % M, M};
  rep.identity = in(id);
  if (!rep.identity) throw VerificationFailure("identity (0,1) missing mod " + std::to_string(M));

  for (const auto& g : elems) {
    const std::uint64_t dinv = inverse_mod(g.d, M);
    const GroupElement inv{(M - mulmod(dinv, g.b, M)) % M, dinv, M};
    if (!in(inv)) throw VerificationFailure("inverse of " + show(g) + " is missing");
    if (!(compose(g, inv) == id) || !(compose(inv, g) == id))
      throw VerificationFailure("inverse of " + show(g) + " does not compose to the identity");
  }
  rep.inverses = true;

  // Generating set S inside the set; the monoid it generates covers everything
  // and H * s stays in H for each s in S, so H * H stays in H.
  std::vector<GroupElement> gens;
  std::unordered_set<std::uint64_t> reached{key(id)};
  std::vector<GroupElement> reached_list{id};
  for (const auto& g : elems) {
    if (reached.count(key(g))) continue;
    gens.push_back(g);
    std::vector<GroupElement> frontier = reached_list;
    while (!frontier.empty()) {
      const GroupElement h = frontier.back();
      frontier.pop_back();
      for (const auto& s : gens) {
        const GroupElement n = compose(h, s);
        if (reached.insert(key(n)).second) {
          frontier.push_back(n);
          reached_list.push_back(n);
        }
      }
    }
  }
  if (reached.size() != elems.size())
    throw VerificationFailure("products of elements leave the set mod " + std::to_string(M));
  for (const auto& h : elems)
    for (const auto& s : gens)
      if (!in(compose(h, s))) throw VerificationFailure("not closed: " + show(h) + " * " + show(s));
  rep.generators = gens.size();

  // Products against explicit matrix multiplication: all pairs for small
  // groups, a fixed pseudo-random sample otherwise.
  auto check_pair = [&](const GroupElement& x, const GroupElement& y) {
    const GroupElement c = compose(x, y);
    if (!(c == matrix_product(x, y))) throw VerificationFailure("group law disagrees with matrices at " + show(x) + " * " + show(y));
    if (!in(c)) throw VerificationFailure("not closed: " + show(x) + " * " + show(y));
    ++rep.sampled_products;
  };
  if (elems.size() <= 1500) {
    for (const auto& x : elems)
      for (const auto& y : elems) check_pair(x, y);
  } else {
    std::mt19937_64 rng(0x5eed + p * 131 + k);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int i = 0; i < 20000; ++i) check_pair(elems[pick(rng)], elems[pick(rng)]);
  }
  rep.closure = true;

  if (k == 1) {
    rep.reduction_surjective = true;
    rep.fiber_size = rep.size;
    return rep;
  }
  const auto lower = enumerate_A(dec, p, k - 1, budget);
  const std::uint64_t Mlow = M / p;
  std::unordered_map<std::uint64_t, std::uint64_t> fibres;
  for (const auto& g : elems) ++fibres[(g.b % Mlow) * Mlow + g.d % Mlow];
  for (const auto& g : lower)
    if (!fibres.count(key(g))) throw VerificationFailure("reduction misses " + show(g));
  if (fibres.size() != lower.size()) throw VerificationFailure("reduction lands outside A(p^(k-1))");
  const std::uint64_t want = rep.size / lower.size();
  if (want * lower.size() != rep.size) throw VerificationFailure("fibre size is not an integer");
  for (const auto& [kk, count] : fibres)
    if (count != want)
      throw VerificationFailure("fibre over (" + std::to_string(kk / Mlow) + "," + std::to_string(kk % Mlow) +
                                ") has size " + std::to_string(count) + ", expected " + std::to_string(want));
  rep.reduction_surjective = true;
  rep.fiber_size = want;
  return rep;
}

std::uint64_t residual_index(std::int64_t a, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("residual_index: " + std::to_string(p) + " is not prime");
  return (p - 1) / multiplicative_order(a, p);
}

ScanResult prime_scan(const std::function<Rational(std::uint64_t)>& f, std::int64_t a, std::uint64_t x,
                      std::uint64_t budget) {
  if (x < 3) throw DomainError("prime_scan requires x >= 3");
  if (x > budget) throw ResourceLimit("prime_scan: x = " + std::to_string(x) + " exceeds the budget " + std::to_string(budget));
  if (a == 0) throw DomainError("prime_scan requires a != 0");

  const auto base = primes_up_to(std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x))) + 1));
  std::map<std::uint64_t, std::uint64_t> index_counts;
  ScanResult res;
  res.x = x;

  constexpr int kMaxFactors = 16;
  std::vector<std::uint64_t> rem;
  std::vector<std::array<std::uint64_t, kMaxFactors>> fac;
  std::vector<std::uint8_t> nfac;
  std::vector<std::int32_t> slot;

  SegmentedSieve sieve(2, x);
  for (auto seg = sieve.next(); !seg.empty(); seg = sieve.next()) {
    const std::size_t m = seg.size();
    rem.assign(m, 0);
    fac.assign(m, {});
    nfac.assign(m, 0);
    const std::uint64_t lo = seg.front();
    slot.assign((seg.back() - lo) / 2 + 1, -1);
    for (std::size_t i = 0; i < m; ++i) {
      rem[i] = seg[i] - 1;
      if (seg[i] % 2 == 1) slot[(seg[i] - lo) / 2] = static_cast<std::int32_t>(i);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (rem[i] % 2 == 0 && rem[i] != 0) {
        fac[i][nfac[i]++] = 2;
        while (rem[i] % 2 == 0) rem[i] /= 2;
      }
    }
    // Odd q: the primes p = 1 (mod 2q) in the segment are the ones with q | p - 1.
    for (std::uint64_t q : base) {
      if (q == 2) continue;
      const std::uint64_t step = 2 * q;
      std::uint64_t start = lo <= 1 ? 1 : lo - ((lo - 1) % step);
      if (start < lo) start += step;
      for (std::uint64_t p = start; p <= seg.back(); p += step) {
        const std::int32_t i = slot[(p - lo) / 2];
        if (i < 0) continue;
        fac[i][nfac[i]++] = q;
        while (rem[i] % q == 0) rem[i] /= q;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint64_t p = seg[i];
      if (a % static_cast<std::int64_t>(p) == 0) {
        ++res.excluded;
        continue;
      }
      if (rem[i] > 1) fac[i][nfac[i]++] = rem[i];
      std::vector<std::uint64_t> primes(fac[i].begin(), fac[i].begin() + nfac[i]);
      const std::uint64_t ord = multiplicative_order(a, p, primes);
      ++index_counts[(p - 1) / ord];
      ++res.primes_scanned;
    }
  }

  std::vector<Rational> terms;
  terms.reserve(index_counts.size());
  for (const auto& [i, count] : index_counts) terms.push_back(f(i) * Rational(Integer(std::to_string(count))));
  res.sum = tree_sum(std::move(terms));
  const Enclosure li = log_integral(Rational(Integer(std::to_string(x))), Rational(Integer(std::to_string(x))) / 1'000'000'000);
  res.ratio = Enclosure::point(res.sum) * li.reciprocal();
  return res;
}

Rational majorant_upper_bound(const engine::GFamily& fam, const engine::GroupTower& tower, std::uint64_t Q) {
  const unsigned d = tower.growth_degree();
  const Rational& C = fam.growth.C;
  const Rational& alpha = fam.growth.alpha;
  if (Q < tower.special_prime_bound()) throw SpecError("majorant_upper_bound: Q below the special primes");

  ProductAccumulator acc(192);
  for_each_prime(2, Q, [&](std::uint64_t p) {
    const engine::LocalSeries s = fam.series(p);
    const Rational P(p);
    const unsigned K = tower.regular_from(p) + static_cast<unsigned>(std::ceil(40.0 / std::log2(static_cast<double>(p))));
    Rational M = 1;
    for (unsigned k = 1; k <= K; ++k) {
      const Rational card(tower.card(p, k));
      if (s.known(k)) M += s.value(k).magnitude() / card;
      else M += C * pow_bound(P, alpha * k, MPFR_RNDU) / card;
    }
    // k > K >= regular_from: card = base p^(dk), so |g|/card <= C/base w^k
    const Rational w = pow_bound(P, alpha - d, MPFR_RNDU);
    M += C / tower.regular_base(p) * pow_bound(P, (alpha - d) * (K + 1), MPFR_RNDU) / (1 - w);
    acc.multiply(M);
  });
  const Rational T = engine::prime_tail_bound(fam.growth, tower, Q);
  if (T >= 1) throw ResourceLimit("majorant_upper_bound: tail bound >= 1 at Q = " + std::to_string(Q));
  return acc.value().hi() / (1 - T);
}

PartialSum partial_sum(const engine::GFamily& fam, const engine::GroupTower& tower, std::uint64_t N,
                       std::uint64_t budget) {
  if (N == 0) throw DomainError("partial_sum requires N >= 1");
  if (N > budget) throw ResourceLimit("partial_sum: N = " + std::to_string(N) + " exceeds the budget");
  const auto spf = spf_table(N);

  std::vector<Rational> lo_terms, hi_terms, abs_terms;
  bool exact = true;
  for (std::uint64_t n = 1; n <= N; ++n) {
    Enclosure g = Enclosure::point(1);
    Integer card = 1;
    for (std::uint64_t m = n; m > 1;) {
      const std::uint64_t p = spf[m];
      unsigned k = 0;
      while (m % p == 0) {
        m /= p;
        ++k;
      }
      g *= fam.at_prime_power(p, k);
      card *= tower.card(p, k);
    }
    if (g.is_zero()) continue;
    const Rational deg(tower.degree(n));
    abs_terms.push_back(abs_lower(g) / Rational(card));
    exact = exact && g.is_point();
    lo_terms.push_back(g.lo() / deg);
    hi_terms.push_back(g.hi() / deg);
  }

  PartialSum out;
  out.N = N;
  if (exact) out.value = Enclosure::point(tree_sum(std::move(lo_terms)));
  else out.value = Enclosure(tree_sum(std::move(lo_terms)), tree_sum(std::move(hi_terms)));

  const Rational S_abs = tree_sum(std::move(abs_terms));
  const std::uint64_t Q = std::max<std::uint64_t>({tower.special_prime_bound(), 1000, std::min<std::uint64_t>(20 * N, 20'000'000)});
  const Rational U = majorant_upper_bound(fam, tower, Q);
  if (U < S_abs) throw IntegrityError("majorant bound below its own truncation");
  out.tail = 2 * (U - S_abs);
  return out;
}

PartialSum partial_sum(const engine::GFamily& fam, const kummer::KummerDecomposition& dec,
                       const kummer::EntanglementProfile& profile, std::uint64_t N) {
  return partial_sum(fam, engine::KummerTower(dec, profile), N);
}

PartialSum serre_partial_sum(const engine::GFamily& fam, const serre::SerreInput& input, std::uint64_t N) {
  return partial_sum(fam, serre::SerreTower(input), N);
}

}  // namespace kummerconst::oracle
