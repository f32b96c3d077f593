#include "kummerconst/factor.hpp"

#include <algorithm>
#include <map>

#include "kummerconst/errors.hpp"

namespace kummerconst {

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// 3317044064679887385961981: the 13 smallest prime bases are a deterministic
// witness set below this bound.
const Integer& deterministic_mr_bound() {
  static const Integer bound("3317044064679887385961981", 10);
  return bound;
}

bool miller_rabin(const Integer& n, unsigned long base) {
  Integer d = n - 1;
  unsigned r = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++r;
  }
  Integer x, b(base), nm1 = n - 1;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == nm1) return true;
  }
  return false;
}

struct Budget {
  std::uint64_t left;
  void spend(std::uint64_t n = 1) {
    if (left < n) throw FactorizationTimeout("factorization budget exhausted");
    left -= n;
  }
};

// Brent's variant of Pollard rho. Returns a nontrivial factor of composite n.
Integer pollard_brent(const Integer& n, Budget& budget) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  for (unsigned long c = 1;; ++c) {
    Integer y(2), x, g(1), q(1), ys;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    const unsigned long m = 128;
    unsigned long r = 1;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        const unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = f(y);
          q = (q * abs(Integer(x - y))) % n;
        }
        budget.spend(lim);
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        budget.spend();
        Integer diff = abs(Integer(x - ys));
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Integer& n, Budget& budget, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n, budget);
  split(d, budget, out);
  split(n / d, budget, out);
}

}  // namespace

Integer Factorization::reconstruct() const {
  Integer r(sign);
  for (const auto& [p, k] : factors) r *= ipow(p, k);
  return r;
}

unsigned Factorization::exponent_of(const Integer& p) const {
  for (const auto& f : factors)
    if (f.prime == p) return f.exponent;
  return 0;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  for (unsigned long b : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul})
    if (!miller_rabin(n, b)) return false;
  if (n < deterministic_mr_bound()) return true;
  // Beyond the deterministic range fall back to GMP's BPSW-based test.
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(const Integer& n, std::uint64_t budget) {
  if (n == 0) throw DomainError("factorize(0)");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  Integer m = abs(n);
  Budget b{budget};
  std::map<Integer, unsigned> found;

  for (std::uint32_t p : trial_primes()) {
    if (m == 1) break;
    if (Integer(p) * p > m) break;
    b.spend();
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned k = 0;
      do {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++k;
      } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
      found[Integer(p)] = k;
    }
  }
  if (m > 1) split(m, b, found);

  for (auto& [p, k] : found) f.factors.push_back({p, k});
  return f;
}

Integer squarefree_kernel(const Integer& n) {
  Factorization f = factorize(n);
  Integer m(f.sign);
  for (const auto& [p, k] : f.factors)
    if (k % 2 == 1) m *= p;
  return m;
}

Integer euler_phi(const Integer& n) {
  if (n < 1) throw DomainError("euler_phi requires n >= 1");
  Integer r(1);
  for (const auto& [p, k] : factorize(n).factors) r *= ipow(p, k - 1) * (p - 1);
  return r;
}

int mobius(const Integer& n) {
  if (n < 1) throw DomainError("mobius requires n >= 1");
  int mu = 1;
  for (const auto& [p, k] : factorize(n).factors) {
    if (k > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p, const std::vector<std::uint64_t>& primes_of_p_minus_1) {
  const std::int64_t ps = static_cast<std::int64_t>(p);
  std::int64_t r = a % ps;
  if (r < 0) r += ps;
  if (r == 0) throw DomainError("multiplicative_order: p divides a");
  const auto base = static_cast<std::uint64_t>(r);
  std::uint64_t order = p - 1;
  for (std::uint64_t q : primes_of_p_minus_1) {
    while (order % q == 0 && powmod(base, order / q, p) == 1) order /= q;
  }
  return order;
}

std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("multiplicative_order: modulus is not prime");
  std::vector<std::uint64_t> qs;
  for (const auto& f : factorize(Integer(static_cast<unsigned long>(p - 1))).factors) qs.push_back(f.prime.get_ui());
  return multiplicative_order(a, p, qs);
}

}  // namespace kummerconst
