#pragma once

#include <cstdint>
#include <map>

#include "kummerconst/engine.hpp"
#include "kummerconst/rational.hpp"

namespace kummerconst::serre {

/// Discriminant data of a Serre curve.
struct SerreInput {
  Integer delta;
  Integer D;                                 // discriminant of Q(sqrt(delta))
  std::map<std::uint64_t, unsigned> levels;  // l(p) for p | 2D
  Integer n_E{1};
};

/// Discriminant of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
/// SingularCurve when it vanishes.
Integer weierstrass_discriminant(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& a4,
                                 const Integer& a6);

/// DomainError if delta is zero or a perfect square.
SerreInput serre_profile(const Integer& delta);

/// #GL_2(Z/p^k) = p^(4k-3)(p^2-1)(p-1) for k >= 1, 1 for k = 0.
Integer card_aut(std::uint64_t p, unsigned k);

/// prod over p^k || n of card_aut(p, k), halved when n_E | n.
Integer serre_degree(const SerreInput& input, std::uint64_t n);

class SerreTower final : public engine::GroupTower {
 public:
  explicit SerreTower(SerreInput input);

  const SerreInput& input() const { return in_; }

  Integer card(std::uint64_t p, unsigned k) const override { return card_aut(p, k); }
  Integer degree(std::uint64_t n) const override { return serre_degree(in_, n); }
  const std::map<std::uint64_t, unsigned>& levels() const override { return in_.levels; }
  Integer conductor() const override { return in_.n_E; }
  std::uint64_t special_prime_bound() const override { return special_; }
  unsigned regular_from(std::uint64_t) const override { return 1; }
  Rational regular_base(std::uint64_t p) const override;
  unsigned growth_degree() const override { return 4; }
  Rational inverse_base_bound(std::uint64_t m) const override;

 private:
  SerreInput in_;
  std::uint64_t special_ = 2;
};

engine::ConstantResult serre_constant(const engine::GFamily& fam, const SerreInput& input,
                                      const engine::EvaluationOptions& opts = {});

}  // namespace kummerconst::serre
