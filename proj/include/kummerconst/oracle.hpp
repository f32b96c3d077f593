#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kummerconst/engine.hpp"
#include "kummerconst/kummer.hpp"
#include "kummerconst/serre.hpp"

namespace kummerconst::oracle {

/// The matrix [[1, 0], [b, d]] mod p^k.
struct GroupElement {
  std::uint64_t b = 0;
  std::uint64_t d = 1;
  std::uint64_t modulus = 1;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// b = b1 + d1 b2, d = d1 d2 (mod p^k).
GroupElement compose(const GroupElement& x, const GroupElement& y);

inline constexpr std::uint64_t kEnumerationBudget = 100'000;

/// All (b, d) with d a unit satisfying the defining congruence of A(p^k).
/// ResourceLimit when p^k exceeds the budget.
std::vector<GroupElement> enumerate_A(const kummer::KummerDecomposition& dec, std::uint64_t p, unsigned k,
                                      std::uint64_t budget = kEnumerationBudget);

struct VerificationReport {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t size = 0;
  Integer expected;
  bool size_ok = false;
  bool identity = false;
  bool inverses = false;
  bool closure = false;
  bool reduction_surjective = false;
  std::uint64_t fiber_size = 0;
  std::size_t generators = 0;
  std::size_t sampled_products = 0;
};

/// Size against card_A, identity, inverses, closure (a generating set and
/// right multiplication by it, plus sampled products compared with matrix
/// multiplication) and surjectivity of reduction to level k - 1 with equal
/// fibres. VerificationFailure with a counterexample on any violation.
VerificationReport verify_group(const kummer::KummerDecomposition& dec, std::uint64_t p, unsigned k,
                                std::uint64_t budget = kEnumerationBudget);

/// (p - 1) / ord_p(a). DomainError if p | a.
std::uint64_t residual_index(std::int64_t a, std::uint64_t p);

struct ScanResult {
  std::uint64_t x = 0;
  std::uint64_t primes_scanned = 0;
  std::uint64_t excluded = 0;  // primes dividing a
  Rational sum;
  Enclosure ratio;  // sum / li(x)
};

inline constexpr std::uint64_t kScanBudget = 10'000'000'000;

/// Exact sum of f(i_a(p)) over primes p <= x with p not dividing a.
/// DomainError for x < 3, ResourceLimit for x above the budget.
ScanResult prime_scan(const std::function<Rational(std::uint64_t)>& f, std::int64_t a, std::uint64_t x,
                      std::uint64_t budget = kScanBudget);

struct PartialSum {
  std::uint64_t N = 0;
  Enclosure value;  // sum over n <= N of g(n) / #G(n); a point for exact families
  Rational tail;    // |sum over n > N| <= tail
  Enclosure with_tail() const { return value.widened(tail); }
};

inline constexpr std::uint64_t kPartialSumBudget = 10'000'000;

/// Truncated series with a rigorous tail: 2 (U - S_N), where U bounds the
/// majorant Euler product prod_p sum_k |g(p^k)| / #A(p^k) from above and S_N
/// is its own truncation (#G(n) >= #A(n) / 2).
PartialSum partial_sum(const engine::GFamily& fam, const engine::GroupTower& tower, std::uint64_t N,
                       std::uint64_t budget = kPartialSumBudget);
PartialSum partial_sum(const engine::GFamily& fam, const kummer::KummerDecomposition& dec,
                       const kummer::EntanglementProfile& profile, std::uint64_t N);
PartialSum serre_partial_sum(const engine::GFamily& fam, const serre::SerreInput& input, std::uint64_t N);

/// Upper bound for prod_p sum_k |g(p^k)| / card(p^k), computed by direct
/// summation at p <= Q and the growth-bound tail beyond.
Rational majorant_upper_bound(const engine::GFamily& fam, const engine::GroupTower& tower, std::uint64_t Q);

}  // namespace kummerconst::oracle
