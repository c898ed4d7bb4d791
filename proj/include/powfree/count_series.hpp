#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string_view>
#include <optional>
#include <vector>

#include "powfree/threshold.hpp"
#include "powfree/word.hpp"

namespace powfree {

enum class Method { naive, incremental, canonical };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Exact counts C_0..C_L of free words of each length over {1..k}. When
/// `tail_max` is set the language only excludes forbidden powers whose tail is
/// at most that long.
struct CountSeries {
  std::uint32_t k = 1;
  Threshold threshold{2, 1};
  TailLimit tail_max;
  Method method = Method::incremental;
  std::vector<mpz_class> counts;

  std::size_t max_length() const noexcept {
    return counts.empty() ? 0 : counts.size() - 1;
  }

  bool same_language(const CountSeries& other) const noexcept {
    return k == other.k && threshold == other.threshold &&
           tail_max == other.tail_max;
  }

  friend bool operator==(const CountSeries&, const CountSeries&) = default;
};

}  // namespace powfree
