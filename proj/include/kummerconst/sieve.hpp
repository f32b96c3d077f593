#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace kummerconst {

/// Number of odd integers covered by one sieve segment.
inline constexpr std::size_t kSegmentEntries = std::size_t{1} << 20;

/// Largest x accepted by primes_up_to (the full list is materialised).
inline constexpr std::uint64_t kDefaultPrimeListBound = 400'000'000;

/// Segmented sieve of Eratosthenes over odd numbers. Memory use is
/// O(sqrt(hi) + kSegmentEntries) regardless of the range length.
///
///   SegmentedSieve sieve(2, 1'000'000);
///   while (auto seg = sieve.next()) for (auto p : *seg) ...
class SegmentedSieve {
 public:
  /// Primes p with lo <= p <= hi.
  SegmentedSieve(std::uint64_t lo, std::uint64_t hi);

  /// Primes of the next segment in increasing order; empty span once the
  /// range is exhausted. The span stays valid until the next call.
  std::span<const std::uint64_t> next();
  bool done() const { return cursor_ > hi_; }

 private:
  std::uint64_t lo_, hi_, cursor_;
  std::vector<std::uint32_t> base_;  // odd primes <= sqrt(hi)
  std::vector<std::uint8_t> composite_;
  std::vector<std::uint64_t> out_;
  bool emitted_two_ = false;
};

/// Calls fn(p) for each prime lo <= p <= hi, in increasing order.
void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& fn);

/// All primes <= x. DomainError if x < 2, ResourceLimit if x > max_x.
std::vector<std::uint64_t> primes_up_to(std::uint64_t x, std::uint64_t max_x = kDefaultPrimeListBound);

}  // namespace kummerconst
