#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kummerconst/enclosure.hpp"
#include "kummerconst/kummer.hpp"
#include "kummerconst/rational.hpp"

namespace kummerconst::engine {

using kummerconst::to_string;

/// |g(p^k)| <= C * p^(alpha * k) for all primes p and k >= 1.
struct GrowthBound {
  Rational C{1};
  Rational alpha{0};
};

/// g(p^k) = coef * ratio^k for every k >= head.size(). ratio >= 0.
struct GeometricTail {
  Rational coef;
  Enclosure ratio;
};

/// The values g(p^k) of a multiplicative function at one prime.
struct LocalSeries {
  std::vector<Rational> head;  // g(1), g(p), ..., head[0] == 1
  std::optional<GeometricTail> geometric;

  bool known(unsigned k) const { return k < head.size() || geometric.has_value(); }
  /// g(p^k); SpecError when k is past the head and there is no geometric rule.
  Enclosure value(unsigned k) const;
};

/// A multiplicative arithmetic function described prime by prime.
struct GFamily {
  std::string name;
  std::function<LocalSeries(std::uint64_t p)> series;
  GrowthBound growth;
  /// Tabulated families are only known for p <= table_bound.
  std::optional<std::uint64_t> table_bound;

  Enclosure at_prime_power(std::uint64_t p, unsigned k) const;
  /// g(n) via the factorization of n.
  Enclosure at(std::uint64_t n) const;
};

enum class BuiltinKind { Moebius, One, Power, Laxton };

/// moebius, one, power(z) with g(p^k) = p^(-kz), laxton with
/// g(p^k) = p^-k - p^-(k-1). SpecError for z <= 0.
GFamily builtin_family(BuiltinKind kind, const Rational& z = 0);

/// g(p^k) = f(p^k) - f(p^(k-1)) tabulated for k <= terms. SpecError when the
/// growth bound is missing or f(1) != 1.
GFamily mobius_inverse_family(std::string name, std::function<Rational(std::uint64_t p, unsigned k)> f_local,
                              std::optional<GrowthBound> growth, unsigned terms = 64);

/// Custom family from the JSON document
///   {"name": str, "growth": {"C": "num/den", "alpha": "num/den"},
///    "values": [{"p": int, "k": int, "g": "num/den"}, ...]}
/// Every prime up to the largest listed one must appear with k = 1..K_p
/// contiguous, and every value must respect the growth bound. SpecError otherwise.
GFamily family_from_json(const std::string& text);
GFamily family_from_file(const std::string& path);

/// Cardinalities #A(p^k) of a tower of finite groups, with the regime
/// #A(p^k) = regular_base(p) * p^(d k) for k >= regular_from(p) that the
/// closed-form local sums and the prime tail bounds rely on.
class GroupTower {
 public:
  virtual ~GroupTower() = default;

  virtual Integer card(std::uint64_t p, unsigned k) const = 0;
  /// #G(n): card over n with the index-2 drop where the tower prescribes it.
  virtual Integer degree(std::uint64_t n) const = 0;
  /// l(p) for every p | 2D.
  virtual const std::map<std::uint64_t, unsigned>& levels() const = 0;
  virtual Integer conductor() const = 0;
  /// Largest prime at which card deviates from the generic shape.
  virtual std::uint64_t special_prime_bound() const = 0;
  virtual unsigned regular_from(std::uint64_t p) const = 0;
  virtual Rational regular_base(std::uint64_t p) const = 0;
  virtual unsigned growth_degree() const = 0;
  /// Upper bound for 1 / regular_base(q) over all primes q >= m beyond
  /// special_prime_bound().
  virtual Rational inverse_base_bound(std::uint64_t m) const = 0;
};

class KummerTower final : public GroupTower {
 public:
  KummerTower(kummer::KummerDecomposition dec, kummer::EntanglementProfile profile);
  explicit KummerTower(std::int64_t a);

  const kummer::KummerDecomposition& decomposition() const { return dec_; }
  const kummer::EntanglementProfile& profile() const { return prof_; }

  Integer card(std::uint64_t p, unsigned k) const override;
  Integer degree(std::uint64_t n) const override;
  const std::map<std::uint64_t, unsigned>& levels() const override { return prof_.levels; }
  Integer conductor() const override { return prof_.n_a; }
  std::uint64_t special_prime_bound() const override { return special_; }
  unsigned regular_from(std::uint64_t p) const override;
  Rational regular_base(std::uint64_t p) const override;
  unsigned growth_degree() const override { return 2; }
  Rational inverse_base_bound(std::uint64_t m) const override;

 private:
  kummer::KummerDecomposition dec_;
  kummer::EntanglementProfile prof_;
  std::uint64_t special_ = 2;
};

/// F_p(L) = sum over k >= L of g(p^k) / card(p^k). A point enclosure when the
/// family has a closed form at p; otherwise the truncated sum widened by the
/// growth-bound tail.
Enclosure local_sum(const GFamily& fam, const GroupTower& tower, std::uint64_t p, unsigned L);
Enclosure local_sum(const LocalSeries& series, const GrowthBound& growth, const GroupTower& tower, std::uint64_t p,
                    unsigned L);

/// T with sum over primes q > P of |F_q(0) - 1| <= T, from comparing the
/// prime sum with the sum over all integers m > P. SpecError if alpha >= d - 1.
Rational prime_tail_bound(const GrowthBound& growth, const GroupTower& tower, std::uint64_t P);

enum class VanishingKind { NonVanishing, VanishLocal, VanishGlobal };

struct VanishingStatus {
  VanishingKind kind = VanishingKind::NonVanishing;
  std::uint64_t prime = 0;  // set for VanishLocal
  std::string tag() const;
};

struct ConstantResult {
  Enclosure value;
  /// All factors with p <= P_used: generic_product * bracket.
  Enclosure finite_part;
  /// Product of F_p(0) over p <= P_used with p not dividing 2D.
  Enclosure generic_product;
  Enclosure entangled_naive;    // prod over p | 2D of F_p(0)
  Enclosure entangled_shifted;  // prod over p | 2D of F_p(l(p))
  Enclosure bracket;            // entangled_naive + entangled_shifted
  /// bracket / entangled_naive when both are exact and the divisor is nonzero.
  std::optional<Rational> correction;
  Rational tail_bound{0};
  std::uint64_t P_used = 0;
  std::optional<VanishingStatus> vanishing;
  bool precision_reached = true;
};

struct EvaluationOptions {
  Rational target_error{Rational(1, 1000000)};
  std::uint64_t P_max = 100'000'000;
};

/// Sum over n of g(n) / #G(n) through the factorized product, enclosed with a
/// rigorous tail for primes beyond the adaptive cutoff. When the target width
/// is not met by P_max the widest achieved enclosure comes back with
/// precision_reached = false.
ConstantResult evaluate_constant(const GFamily& fam, const GroupTower& tower, const EvaluationOptions& opts = {});
ConstantResult evaluate_constant(const GFamily& fam, const kummer::KummerDecomposition& dec,
                                 const kummer::EntanglementProfile& profile, const Rational& target_error,
                                 std::uint64_t P_max);

enum class CorrectionKind { Exact, Enclosed, NotCorrectable, NotDefined };

struct CorrectionOutcome {
  CorrectionKind kind = CorrectionKind::NotDefined;
  std::optional<Rational> exact;
  std::optional<Enclosure> enclosure;
};

std::string to_string(CorrectionKind kind);

/// Ratio of the constant to the naive product of sum_k g(p^k) / #G(p^k):
/// bracket / prod over p | 2D of F^G_p(0).
CorrectionOutcome correction_factor(const GFamily& fam, const GroupTower& tower);

/// Decides whether the constant is zero. SpecError when a local factor is
/// only known as an enclosure that straddles zero.
VanishingStatus vanishing_check(const GFamily& fam, const GroupTower& tower);

}  // namespace kummerconst::engine
