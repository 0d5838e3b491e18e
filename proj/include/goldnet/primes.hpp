#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "goldnet/errors.hpp"

namespace goldnet {

// Sieve of Eratosthenes over the odd numbers, one bit per odd value.
// Immutable after construction.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint32_t limit) : limit_(limit) {
    if (limit < 2) {
      throw InvalidBound("prime table limit must be >= 2, got " +
                         std::to_string(limit));
    }
    // bit i stands for the odd number 2i+1
    const std::uint64_t odd_count = limit / 2 + 1;
    bits_.assign((odd_count + 63) / 64, ~std::uint64_t{0});
    clear_bit(0);  // 1 is not prime
    for (std::uint64_t p = 3; p * p <= limit; p += 2) {
      if (!test_bit(p / 2)) continue;
      for (std::uint64_t m = p * p; m <= limit; m += 2 * p) clear_bit(m / 2);
    }
    primes_.push_back(2);
    for (std::uint64_t n = 3; n <= limit; n += 2) {
      if (test_bit(n / 2)) primes_.push_back(static_cast<std::uint32_t>(n));
    }
  }

  std::uint32_t limit() const { return limit_; }

  bool is_prime(std::uint64_t n) const {
    if (n > limit_) {
      throw OutOfRange("primality query " + std::to_string(n) +
                       " beyond sieve limit " + std::to_string(limit_));
    }
    return is_prime_unchecked(n);
  }

  // Caller guarantees n <= limit().
  bool is_prime_unchecked(std::uint64_t n) const {
    if (n < 3) return n == 2;
    return (n & 1) != 0 && test_bit(n / 2);
  }

  // Ascending, starting at 2.
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

 private:
  bool test_bit(std::uint64_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
  void clear_bit(std::uint64_t i) { bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::uint32_t limit_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> primes_;
};

inline PrimeTable build_table(std::uint32_t limit) { return PrimeTable(limit); }

}  // namespace goldnet
