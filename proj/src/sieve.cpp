#include "kummerconst/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kummerconst/errors.hpp"

namespace kummerconst {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> small_odd_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 3; i <= limit; i += 2) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[j] = true;
  }
  return out;
}

}  // namespace

SegmentedSieve::SegmentedSieve(std::uint64_t lo, std::uint64_t hi)
    : lo_(lo), hi_(hi), cursor_(lo), base_(small_odd_primes(isqrt(hi))) {
  composite_.resize(kSegmentEntries);
  out_.reserve(kSegmentEntries / 4);
}

std::span<const std::uint64_t> SegmentedSieve::next() {
  out_.clear();
  while (out_.empty() && cursor_ <= hi_) {
    if (!emitted_two_ && cursor_ <= 2 && 2 <= hi_) out_.push_back(2);
    emitted_two_ = true;
    // Segment covers odd numbers in [start, start + 2*kSegmentEntries).
    std::uint64_t start = cursor_ | 1;
    if (start < 3) start = 3;
    const std::uint64_t span_end = start + 2 * kSegmentEntries - 1;  // inclusive, odd
    const std::uint64_t end = span_end < hi_ ? span_end : hi_;
    if (start > end) {
      cursor_ = hi_ + 1;
      break;
    }
    const std::size_t count = static_cast<std::size_t>((end - start) / 2 + 1);
    std::fill(composite_.begin(), composite_.begin() + static_cast<std::ptrdiff_t>(count), 0);
    for (std::uint32_t p : base_) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp > end) break;
      std::uint64_t first = pp >= start ? pp : ((start + p - 1) / p) * p;
      if ((first & 1) == 0) first += p;
      for (std::uint64_t m = first; m <= end; m += 2 * std::uint64_t{p}) composite_[(m - start) / 2] = 1;
    }
    for (std::size_t i = 0; i < count; ++i)
      if (!composite_[i]) out_.push_back(start + 2 * i);
    cursor_ = end + 1;
  }
  return {out_.data(), out_.size()};
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& fn) {
  if (hi < 2 || lo > hi) return;
  SegmentedSieve sieve(lo, hi);
  while (!sieve.done()) {
    for (std::uint64_t p : sieve.next()) fn(p);
  }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x, std::uint64_t max_x) {
  if (x < 2) throw DomainError("primes_up_to requires x >= 2");
  if (x > max_x) throw ResourceLimit("primes_up_to(" + std::to_string(x) + ") exceeds the configured bound " + std::to_string(max_x));
  std::vector<std::uint64_t> out;
  const double est = static_cast<double>(x) / std::log(static_cast<double>(x)) * 1.3 + 16;
  out.reserve(static_cast<std::size_t>(est));
  SegmentedSieve sieve(2, x);
  while (!sieve.done()) {
    auto seg = sieve.next();
    out.insert(out.end(), seg.begin(), seg.end());
  }
  return out;
}

}  // namespace kummerconst
