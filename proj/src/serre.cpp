#include "kummerconst/serre.hpp"

#include "kummerconst/errors.hpp"
#include "kummerconst/factor.hpp"

namespace kummerconst::serre {

Integer weierstrass_discriminant(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& a4,
                                 const Integer& a6) {
  const Integer b2 = a1 * a1 + 4 * a2;
  const Integer b4 = 2 * a4 + a1 * a3;
  const Integer b6 = a3 * a3 + 4 * a6;
  const Integer b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  const Integer delta = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (delta == 0) throw SingularCurve("Weierstrass model is singular (discriminant 0)");
  return delta;
}

SerreInput serre_profile(const Integer& delta) {
  if (delta == 0) throw DomainError("serre_profile: discriminant must be nonzero");
  SerreInput in;
  in.delta = delta;
  const Integer m = squarefree_kernel(delta);
  if (m == 1) throw DomainError("serre_profile: discriminant " + to_string(delta) + " is a perfect square, so D = 1");
  const Integer m_mod4 = ((m % 4) + 4) % 4;
  in.D = m_mod4 == 1 ? m : Integer(4 * m);

  for (const auto& pk : factorize(abs(in.D)).factors) {
    if (!pk.prime.fits_ulong_p()) throw DomainError("serre_profile: prime factor of D does not fit in 64 bits");
    if (pk.prime != 2) in.levels[pk.prime.get_ui()] = 1;
  }
  const unsigned v2 = valuation(in.D, Integer(2));
  in.levels[2] = v2 == 0 ? 1 : v2;  // 4 || D -> 2, 8 || D -> 3
  if (v2 == 1 || v2 > 3) throw IntegrityError("serre_profile: D = " + to_string(in.D) + " is not a fundamental discriminant");

  for (const auto& [p, l] : in.levels) in.n_E *= ipow(Integer(p), l);
  return in;
}

Integer card_aut(std::uint64_t p, unsigned k) {
  if (k == 0) return 1;
  const Integer P(p);
  return ipow(P, 4 * k - 3) * (P * P - 1) * (P - 1);
}

Integer serre_degree(const SerreInput& input, std::uint64_t n) {
  if (n == 0) throw DomainError("serre_degree requires n >= 1");
  Integer total = 1;
  for (const auto& pk : factorize(Integer(n)).factors) total *= card_aut(pk.prime.get_ui(), pk.exponent);
  if (Integer(n) % input.n_E != 0) return total;
  if (total % 2 != 0) throw IntegrityError("serre_degree: odd #GL(" + std::to_string(n) + ") cannot be halved");
  return total / 2;
}

SerreTower::SerreTower(SerreInput input) : in_(std::move(input)) {
  special_ = in_.levels.empty() ? 2 : in_.levels.rbegin()->first;
}

Rational SerreTower::regular_base(std::uint64_t p) const {
  const Integer P(p);
  return Rational((P * P - 1) * (P - 1)) / Rational(P * P * P);
}

Rational SerreTower::inverse_base_bound(std::uint64_t m) const {
  const Integer M(m);
  return Rational(M * M * M) / Rational((M * M - 1) * (M - 1));
}

engine::ConstantResult serre_constant(const engine::GFamily& fam, const SerreInput& input,
                                      const engine::EvaluationOptions& opts) {
  return engine::evaluate_constant(fam, SerreTower(input), opts);
}

}  // namespace kummerconst::serre
