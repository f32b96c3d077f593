#include "kummerconst/euler_product.hpp"

namespace kummerconst {

ProductAccumulator::ProductAccumulator(mpfr_prec_t prec)
    : prec_(prec), lo_(prec), hi_(prec), den_(prec), x_lo_(prec), x_hi_(prec) {
  if (prec < 128) throw IntegrityError("ProductAccumulator needs at least 128 bits");
  mpfr_set_ui(lo_.get(), 1, MPFR_RNDN);
  mpfr_set_ui(hi_.get(), 1, MPFR_RNDN);
}

void ProductAccumulator::multiply(const Rational& factor) { multiply(Enclosure::point(factor)); }

void ProductAccumulator::multiply(const Enclosure& factor) {
  if (zero_) return;
  if (factor.is_zero()) {
    zero_ = true;
    mpfr_set_zero(lo_.get(), 1);
    mpfr_set_zero(hi_.get(), 1);
    return;
  }
  BigFloat f_lo(factor.lo(), MPFR_RNDD, prec_), f_hi(factor.hi(), MPFR_RNDU, prec_);
  if (mpfr_sgn(lo_.get()) >= 0 && mpfr_sgn(f_lo.get()) >= 0) {
    mpfr_mul(lo_.get(), lo_.get(), f_lo.get(), MPFR_RNDD);
    mpfr_mul(hi_.get(), hi_.get(), f_hi.get(), MPFR_RNDU);
    return;
  }
  BigFloat best_lo(prec_), best_hi(prec_), c(prec_);
  bool first = true;
  for (const BigFloat* a : {&lo_, &hi_}) {
    for (const BigFloat* b : {&f_lo, &f_hi}) {
      mpfr_mul(c.get(), a->get(), b->get(), MPFR_RNDD);
      if (first || mpfr_less_p(c.get(), best_lo.get())) mpfr_set(best_lo.get(), c.get(), MPFR_RNDN);
      mpfr_mul(c.get(), a->get(), b->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(c.get(), best_hi.get())) mpfr_set(best_hi.get(), c.get(), MPFR_RNDN);
      first = false;
    }
  }
  lo_ = std::move(best_lo);
  hi_ = std::move(best_hi);
}

void ProductAccumulator::multiply_one_plus_ratio(int sign, std::uint64_t num, std::uint64_t d1, std::uint64_t d2) {
  if (zero_) return;
  // d1 * d2 < 2^128 is exact at >= 128 bits.
  mpfr_set_ui(den_.get(), d1, MPFR_RNDN);
  mpfr_mul_ui(den_.get(), den_.get(), d2, MPFR_RNDN);
  mpfr_ui_div(x_lo_.get(), num, den_.get(), MPFR_RNDD);
  mpfr_ui_div(x_hi_.get(), num, den_.get(), MPFR_RNDU);
  if (sign > 0) {
    mpfr_add_ui(x_lo_.get(), x_lo_.get(), 1, MPFR_RNDD);
    mpfr_add_ui(x_hi_.get(), x_hi_.get(), 1, MPFR_RNDU);
  } else {
    mpfr_swap(x_lo_.get(), x_hi_.get());
    mpfr_ui_sub(x_lo_.get(), 1, x_lo_.get(), MPFR_RNDD);
    mpfr_ui_sub(x_hi_.get(), 1, x_hi_.get(), MPFR_RNDU);
  }
  if (mpfr_sgn(x_lo_.get()) <= 0 || mpfr_sgn(lo_.get()) < 0)
    throw IntegrityError("multiply_one_plus_ratio needs positive factors");
  mpfr_mul(lo_.get(), lo_.get(), x_lo_.get(), MPFR_RNDD);
  mpfr_mul(hi_.get(), hi_.get(), x_hi_.get(), MPFR_RNDU);
}

Enclosure ProductAccumulator::value() const {
  if (zero_) return Enclosure::point(0);
  return Enclosure(lo_.to_rational(), hi_.to_rational());
}

Enclosure tail_factor(const Rational& tail) {
  if (tail < 0 || tail >= 1) throw IntegrityError("tail_factor requires 0 <= tail < 1, got " + to_string(tail));
  return Enclosure(1 - tail, 1 / (1 - tail));
}

}  // namespace kummerconst
