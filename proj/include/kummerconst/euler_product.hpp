#pragma once

#include <cstdint>

#include "kummerconst/bigfloat.hpp"
#include "kummerconst/enclosure.hpp"

namespace kummerconst {

/// Running interval product of many rational factors with endpoints kept in
/// directed-rounded binary floating point. The true product of any choice of
/// member points always stays inside [lo, hi].
class ProductAccumulator {
 public:
  explicit ProductAccumulator(mpfr_prec_t prec = 256);

  void multiply(const Rational& factor);
  void multiply(const Enclosure& factor);
  /// Multiplies by 1 + sign * num / (d1 * d2) with directed rounding. The
  /// factor must be positive and d1 * d2 must fit in the working precision.
  void multiply_one_plus_ratio(int sign, std::uint64_t num, std::uint64_t d1, std::uint64_t d2);

  bool is_exact_zero() const { return zero_; }
  Enclosure value() const;

 private:
  mpfr_prec_t prec_;
  BigFloat lo_, hi_;
  BigFloat den_, x_lo_, x_hi_;
  bool zero_ = false;
};

/// Enclosure of prod (1 + x_p) given only sum |x_p| <= tail with tail < 1:
/// [1 - tail, 1 / (1 - tail)]. IntegrityError if tail is outside [0, 1).
Enclosure tail_factor(const Rational& tail);

}  // namespace kummerconst
