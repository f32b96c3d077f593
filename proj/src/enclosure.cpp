#include "kummerconst/enclosure.hpp"

#include <algorithm>
#include <array>

#include "kummerconst/bigfloat.hpp"

namespace kummerconst {

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw IntegrityError("enclosure with lo > hi: [" + kummerconst::to_string(lo_) + ", " + kummerconst::to_string(hi_) + "]");
}

Enclosure Enclosure::around(const Rational& center, const Rational& radius) {
  if (radius < 0) throw IntegrityError("negative enclosure radius");
  return Enclosure(center - radius, center + radius);
}

Rational Enclosure::magnitude() const { return std::max(Rational(abs(lo_)), Rational(abs(hi_))); }

Enclosure& Enclosure::operator+=(const Enclosure& o) {
  lo_ += o.lo_;
  hi_ += o.hi_;
  return *this;
}

Enclosure& Enclosure::operator-=(const Enclosure& o) {
  Rational lo = lo_ - o.hi_;
  hi_ -= o.lo_;
  lo_ = std::move(lo);
  return *this;
}

Enclosure& Enclosure::operator*=(const Enclosure& o) {
  if (is_point() && o.is_point()) {
    lo_ *= o.lo_;
    hi_ = lo_;
    return *this;
  }
  if (lo_ >= 0 && o.lo_ >= 0) {
    lo_ *= o.lo_;
    hi_ *= o.hi_;
    return *this;
  }
  std::array<Rational, 4> c{lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_, hi_ * o.hi_};
  auto [mn, mx] = std::minmax_element(c.begin(), c.end());
  lo_ = *mn;
  hi_ = *mx;
  return *this;
}

Enclosure Enclosure::reciprocal() const {
  if (contains_zero()) throw DomainError("reciprocal of an enclosure containing 0");
  return Enclosure(1 / hi_, 1 / lo_);
}

Enclosure Enclosure::widened(const Rational& radius) const {
  if (radius < 0) throw IntegrityError("negative widening radius");
  return Enclosure(lo_ - radius, hi_ + radius);
}

Enclosure Enclosure::hull(const Enclosure& o) const {
  return Enclosure(std::min(lo_, o.lo_), std::max(hi_, o.hi_));
}

Enclosure Enclosure::rounded_outward(unsigned bits) const {
  BigFloat lo(lo_, MPFR_RNDD, bits), hi(hi_, MPFR_RNDU, bits);
  return Enclosure(lo.to_rational(), hi.to_rational());
}

std::string Enclosure::decimal(unsigned max_digits) const {
  if (is_point()) {
    std::string exact = truncated_decimal(lo_, max_digits);
    // Terminating expansions print without a trailing ellipsis.
    Rational back = parse_rational(exact);
    if (back == lo_) {
      if (exact.find('.') != std::string::npos) {
        while (exact.back() == '0') exact.pop_back();
        if (exact.back() == '.') exact.pop_back();
      }
      return exact;
    }
    return exact + "…";
  }
  if (lo_ < 0 && hi_ > 0) return "indeterminate";
  std::string a = truncated_decimal(lo_, max_digits);
  std::string b = truncated_decimal(hi_, max_digits);
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  std::string prefix = a.substr(0, n);
  while (!prefix.empty() && prefix.back() == '.') prefix.pop_back();
  if (prefix.empty() || prefix == "-") return "indeterminate";
  // A prefix ending inside the integer part is not a digit string of the
  // value's magnitude; only keep it if the integer parts agree.
  auto int_len = [](const std::string& s) { return s.find('.') == std::string::npos ? s.size() : s.find('.'); };
  if (n < std::min(int_len(a), int_len(b)) || int_len(a) != int_len(b)) return "indeterminate";
  return prefix + "…";
}

std::string Enclosure::to_string() const {
  return "[" + kummerconst::to_string(lo_) + ", " + kummerconst::to_string(hi_) + "]";
}

Enclosure enclosure_product(std::span<const Enclosure> factors) {
  Enclosure acc = Enclosure::point(1);
  for (const auto& f : factors) acc *= f;
  return acc;
}

Rational pow_bound(const Rational& base, const Rational& exponent, mpfr_rnd_t rnd, mpfr_prec_t prec) {
  if (base <= 0) throw DomainError("pow_bound requires a positive base");
  // Integer exponents are exact.
  if (exponent.get_den() == 1 && exponent.get_num().fits_slong_p()) {
    long e = exponent.get_num().get_si();
    Rational r = ipow(base, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(1 / r) : r;
  }
  // Interval evaluation of exp(exponent * log(base)); log and exp are
  // increasing, so endpoint rounding in matching directions is rigorous.
  BigFloat b_lo(base, MPFR_RNDD, prec), b_hi(base, MPFR_RNDU, prec);
  BigFloat y_lo(prec), y_hi(prec);
  mpfr_log(y_lo.get(), b_lo.get(), MPFR_RNDD);
  mpfr_log(y_hi.get(), b_hi.get(), MPFR_RNDU);
  BigFloat x_lo(exponent, MPFR_RNDD, prec), x_hi(exponent, MPFR_RNDU, prec);
  BigFloat best(prec), cand(prec);
  bool first = true;
  for (auto* x : {&x_lo, &x_hi}) {
    for (auto* y : {&y_lo, &y_hi}) {
      mpfr_mul(cand.get(), x->get(), y->get(), rnd);
      if (first || (rnd == MPFR_RNDU ? mpfr_greater_p(cand.get(), best.get()) : mpfr_less_p(cand.get(), best.get()))) {
        mpfr_set(best.get(), cand.get(), MPFR_RNDN);
        first = false;
      }
    }
  }
  BigFloat r(prec);
  mpfr_exp(r.get(), best.get(), rnd);
  return r.to_rational();
}

}  // namespace kummerconst
