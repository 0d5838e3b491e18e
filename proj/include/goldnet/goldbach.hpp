#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "goldnet/errors.hpp"
#include "goldnet/primes.hpp"

namespace goldnet {

// One way of writing an even number as p + q with primes p < q.
struct GoldbachPair {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  std::uint32_t delta = 0;  // q - p

  friend bool operator==(const GoldbachPair&, const GoldbachPair&) = default;
};

// All distinct-prime decompositions of n, ascending in p (so descending in
// delta).
struct Decomposition {
  std::uint64_t n = 0;
  std::vector<GoldbachPair> pairs;

  std::size_t omega() const { return pairs.size(); }
};

namespace detail {

inline void check_even(const PrimeTable& table, std::uint64_t n) {
  if (n < 8 || n % 2 != 0) {
    throw InvalidEvenNumber("even number >= 8 required, got " + std::to_string(n));
  }
  if (n > std::uint64_t{table.limit()} + 3) {
    throw OutOfRange("even number " + std::to_string(n) + " needs a sieve limit of at least " +
                     std::to_string(n - 3) + ", table has " + std::to_string(table.limit()));
  }
}

}  // namespace detail

// Fills `out` with the decomposition of n, reusing its storage. Hot path of
// the network builder.
inline void decompose_into(const PrimeTable& table, std::uint64_t n, Decomposition& out) {
  detail::check_even(table, n);
  out.n = n;
  out.pairs.clear();
  // 2 never pairs with a prime for even n >= 8, so start at index 1
  const auto primes = table.primes();
  for (std::size_t i = 1; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    const std::uint64_t q = n - p;
    if (p >= q) break;
    if (table.is_prime_unchecked(q)) {
      out.pairs.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q),
                           static_cast<std::uint32_t>(q - p)});
    }
  }
  if (out.pairs.empty()) {
    throw UndecomposableEven("no distinct-prime Goldbach pair for " + std::to_string(n));
  }
}

inline Decomposition decompose(const PrimeTable& table, std::uint64_t n) {
  Decomposition d;
  decompose_into(table, n, d);
  return d;
}

// (1/omega) * sum(delta^(alpha+1)), exactly the unnormalized average.
inline double mean_delta_literal(const Decomposition& d, double alpha) {
  double sum = 0.0;
  for (const auto& pr : d.pairs) sum += std::pow(static_cast<double>(pr.delta), alpha + 1.0);
  return sum / static_cast<double>(d.omega());
}

// Expected delta when a pair is drawn with probability proportional to
// delta^alpha: sum(delta^(alpha+1)) / sum(delta^alpha). Evaluated with the
// largest log-weight factored out so |alpha| and delta can be large.
inline double mean_delta_weighted(const Decomposition& d, double alpha) {
  if (std::isinf(alpha)) {
    const auto [lo, hi] = std::minmax_element(
        d.pairs.begin(), d.pairs.end(),
        [](const GoldbachPair& a, const GoldbachPair& b) { return a.delta < b.delta; });
    return alpha > 0 ? hi->delta : lo->delta;
  }
  double max_log = -std::numeric_limits<double>::infinity();
  for (const auto& pr : d.pairs) max_log = std::max(max_log, alpha * std::log(double(pr.delta)));
  double num = 0.0;
  double den = 0.0;
  for (const auto& pr : d.pairs) {
    const double w = std::exp(alpha * std::log(double(pr.delta)) - max_log);
    num += w * pr.delta;
    den += w;
  }
  return num / den;
}

}  // namespace goldnet
