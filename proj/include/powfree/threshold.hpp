#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace powfree {

/// Exponent bound p/q. With `strict` set, words must avoid exponents strictly
/// greater than p/q (the "p/q plus" reading); otherwise exponents >= p/q are
/// forbidden.
class Threshold {
 public:
  /// Reduces p/q to lowest terms. Throws Error(invalid_argument) unless
  /// p/q > 1.
  Threshold(std::uint64_t num, std::uint64_t den, bool strict = false);

  /// The Dejean-family threshold n/(n-1), n >= 2.
  static Threshold dejean(std::uint32_t n, bool strict);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  bool strict() const noexcept { return strict_; }

  /// True when a power of period `period` and length `length` is forbidden.
  bool forbids(std::uint64_t length, std::uint64_t period) const noexcept {
    const auto lhs = static_cast<unsigned __int128>(length) * den_;
    const auto rhs = static_cast<unsigned __int128>(period) * num_;
    return strict_ ? lhs > rhs : lhs >= rhs;
  }

  /// "p/q" or "p/q+".
  std::string to_string() const;

  friend bool operator==(const Threshold&, const Threshold&) = default;

  /// Extended order on the reals where x+ sits immediately after x.
  friend std::strong_ordering operator<=>(const Threshold& a,
                                          const Threshold& b) noexcept;

 private:
  std::uint64_t num_;
  std::uint64_t den_;
  bool strict_;
};

/// Smallest length l > period such that a power of that period and length is
/// forbidden by `t`.
std::uint64_t min_violation_length(std::uint64_t period, const Threshold& t);

}  // namespace powfree
