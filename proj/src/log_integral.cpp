#include "kummerconst/log_integral.hpp"

#include "kummerconst/bigfloat.hpp"

namespace kummerconst {

namespace {

constexpr mpfr_prec_t kStartPrec = 128;
constexpr mpfr_prec_t kMaxPrec = 1 << 16;

// Ei(log t) rounded in direction rnd. Ei is increasing on (0, inf), so
// rounding log t the same way keeps the bound one-sided.
void ei_of_log(const BigFloat& t, mpfr_rnd_t rnd, BigFloat& out) {
  BigFloat lg(out.precision());
  mpfr_log(lg.get(), t.get(), rnd);
  mpfr_eint(out.get(), lg.get(), rnd);
}

Enclosure evaluate(const BigFloat& x, mpfr_prec_t prec) {
  BigFloat two(prec);
  two.set_ui(2);
  BigFloat x_lo(prec), x_hi(prec), two_lo(prec), two_hi(prec), lo(prec), hi(prec);
  ei_of_log(x, MPFR_RNDD, x_lo);
  ei_of_log(x, MPFR_RNDU, x_hi);
  ei_of_log(two, MPFR_RNDD, two_lo);
  ei_of_log(two, MPFR_RNDU, two_hi);
  mpfr_sub(lo.get(), x_lo.get(), two_hi.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), x_hi.get(), two_lo.get(), MPFR_RNDU);
  return Enclosure(lo.to_rational(), hi.to_rational());
}

}  // namespace

Enclosure log_integral(const Rational& x, const Rational& target_error) {
  if (x < 2) throw DomainError("log_integral requires x >= 2");
  if (target_error <= 0) throw DomainError("log_integral requires a positive target error");
  if (x == 2) return Enclosure::point(0);

  Enclosure best;
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    BigFloat xf(prec);
    if (mpfr_set_q(xf.get(), x.get_mpq_t(), MPFR_RNDN) != 0) {
      // x is not a float at this precision; widen to the two neighbours
      BigFloat xd(x, MPFR_RNDD, prec), xu(x, MPFR_RNDU, prec);
      best = Enclosure(evaluate(xd, prec).lo(), evaluate(xu, prec).hi());
    } else {
      best = evaluate(xf, prec);
    }
    if (best.width() <= target_error) return best;
  }
  throw PrecisionNotReached("log_integral: target error not reached", best);
}

}  // namespace kummerconst
