#include "kummerconst/rational.hpp"

#include <cctype>

#include "kummerconst/errors.hpp"

namespace kummerconst {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw SpecError("malformed number: '" + std::string(whole) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw SpecError("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw SpecError("zero denominator: '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Integer ez = parse_integer(s.substr(e + 1), text);
    if (!ez.fits_slong_p() || abs(ez) > 100000) throw SpecError("exponent out of range: '" + std::string(text) + "'");
    exp10 = ez.get_si();
    s = s.substr(0, e);
  }

  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw SpecError("malformed number: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw SpecError("malformed number: '" + std::string(text) + "'");
    digits = std::string(s);
  }

  Integer mant(digits, 10);
  if (neg) mant = -mant;
  Rational q(mant);
  if (exp10 > 0) q *= Rational(ipow(Integer(10), static_cast<unsigned long>(exp10)));
  if (exp10 < 0) q /= Rational(ipow(Integer(10), static_cast<unsigned long>(-exp10)));
  q.canonicalize();
  return q;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational ipow(const Rational& base, unsigned long exp) {
  Rational r(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
  r.canonicalize();
  return r;
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero");
  unsigned v = 0;
  Integer m = abs(n);
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

unsigned valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw DomainError("valuation of zero");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::string truncated_decimal(const Rational& q, unsigned digits) {
  Integer scale = ipow(Integer(10), digits);
  Integer num = abs(q.get_num()) * scale;
  Integer t = num / q.get_den();  // truncation toward zero on magnitudes
  std::string s = t.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (q < 0) s.insert(0, "-");
  return s;
}

std::string rounded_decimal(const Rational& q, unsigned digits) {
  Integer scale = ipow(Integer(10), digits);
  Integer num = abs(q.get_num()) * scale * 2 + q.get_den();
  Integer t = num / (q.get_den() * 2);
  std::string s = t.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (q < 0 && t != 0) s.insert(0, "-");
  return s;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace kummerconst
