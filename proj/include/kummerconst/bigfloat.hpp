#pragma once

#include <mpfr.h>

#include <utility>

#include "kummerconst/rational.hpp"

namespace kummerconst {

/// Minimal RAII owner of an mpfr_t. Every operation names its rounding
/// direction, which is how the rigorous bounds in this library are built:
/// results rounded down are lower bounds, results rounded up are upper bounds.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const Rational& q, mpfr_rnd_t rnd, mpfr_prec_t prec = 256) : BigFloat(prec) { set(q, rnd); }
  BigFloat(const BigFloat& o) : BigFloat(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  void set(const Rational& q, mpfr_rnd_t rnd) { mpfr_set_q(v_, q.get_mpq_t(), rnd); }
  void set_ui(unsigned long x) { mpfr_set_ui(v_, x, MPFR_RNDN); }

  /// Exact conversion: every finite mpfr value is a dyadic rational.
  Rational to_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

/// Directed-rounding bounds for base^exponent with base > 0 and rational
/// exponent. Returns a dyadic rational on the requested side.
Rational pow_bound(const Rational& base, const Rational& exponent, mpfr_rnd_t rnd, mpfr_prec_t prec = 256);

}  // namespace kummerconst
