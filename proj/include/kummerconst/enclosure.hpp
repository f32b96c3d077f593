#pragma once

#include <span>
#include <string>

#include "kummerconst/errors.hpp"
#include "kummerconst/rational.hpp"

namespace kummerconst {

/// A closed interval [lo, hi] with exact rational endpoints.
///
/// Arithmetic is exact on the endpoints, so results always contain every
/// point result of member values. `rounded_outward` trades exactness for
/// size by moving the endpoints outward onto a dyadic grid.
class Enclosure {
 public:
  Enclosure() = default;
  Enclosure(Rational lo, Rational hi);
  static Enclosure point(const Rational& q) { return Enclosure(q, q); }
  /// [center - radius, center + radius]; radius must be >= 0.
  static Enclosure around(const Rational& center, const Rational& radius);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  Rational magnitude() const;  // max |x| over the interval

  bool is_point() const { return lo_ == hi_; }
  bool is_zero() const { return lo_ == 0 && hi_ == 0; }
  bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }
  bool contains(const Enclosure& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
  bool intersects(const Enclosure& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }

  Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
  Enclosure& operator+=(const Enclosure& o);
  Enclosure& operator-=(const Enclosure& o);
  Enclosure& operator*=(const Enclosure& o);

  Enclosure reciprocal() const;  // DomainError if 0 is inside
  Enclosure widened(const Rational& radius) const;
  Enclosure hull(const Enclosure& o) const;

  /// Endpoints moved outward to the nearest dyadics with `bits` significant
  /// bits. Keeps endpoint sizes bounded during long products.
  Enclosure rounded_outward(unsigned bits) const;

  /// Digits shared by every member, e.g. "2.2589…"; exact points print in
  /// full up to `max_digits` fractional digits.
  std::string decimal(unsigned max_digits = 30) const;
  std::string to_string() const;

  friend bool operator==(const Enclosure& a, const Enclosure& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

inline Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
inline Enclosure operator-(Enclosure a, const Enclosure& b) { return a -= b; }
inline Enclosure operator*(Enclosure a, const Enclosure& b) { return a *= b; }
inline Enclosure operator*(Enclosure a, const Rational& q) { return a *= Enclosure::point(q); }
inline Enclosure operator*(const Rational& q, Enclosure a) { return a *= Enclosure::point(q); }

/// Interval product of all factors; the empty product is [1, 1].
Enclosure enclosure_product(std::span<const Enclosure> factors);

/// Raised when a requested enclosure width cannot be met; carries the best
/// enclosure that was achieved.
class PrecisionNotReached : public Error {
 public:
  PrecisionNotReached(const std::string& what, Enclosure best) : Error(what), best_(std::move(best)) {}
  const Enclosure& best() const { return best_; }

 private:
  Enclosure best_;
};

}  // namespace kummerconst
