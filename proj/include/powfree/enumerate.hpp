#pragma once

#include <cstdint>

#include "powfree/count_series.hpp"

namespace powfree {

struct EnumerationOptions {
  /// Worker threads for the depth-first engines; 0 means hardware concurrency.
  unsigned workers = 0;
  /// Largest k^L the naive engine accepts.
  std::uint64_t naive_budget = 100'000'000;
};

/// Canonical patterns for large alphabets, plain extension otherwise.
Method default_method(std::uint32_t k) noexcept;

/// Counts t-free words of every length 0..max_length over {1..k}.
///
/// naive       filters all k^i words with find_violation (test oracle)
/// incremental depth-first extension with per-letter suffix checks
/// canonical   depth-first over restricted-growth patterns, each pattern with
///             d distinct letters weighted by k(k-1)...(k-d+1)
///
/// Throws Error(budget_exceeded) when the naive engine would visit more than
/// options.naive_budget words of length max_length.
CountSeries count_free(std::uint32_t k, const Threshold& t,
                       std::size_t max_length, Method method,
                       const EnumerationOptions& options = {});

/// Same as count_free, but only forbidden powers with a tail of at most
/// `tail_max` letters are excluded.
CountSeries count_tail_restricted(std::uint32_t k, const Threshold& t,
                                  std::uint64_t tail_max,
                                  std::size_t max_length, Method method,
                                  const EnumerationOptions& options = {});

/// k(k-1)...(k-d+1).
mpz_class falling_factorial(std::uint32_t k, std::uint32_t d);

}  // namespace powfree
