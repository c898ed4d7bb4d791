#include "powfree/threshold.hpp"

#include <numeric>

#include "powfree/error.hpp"

namespace powfree {

Threshold::Threshold(std::uint64_t num, std::uint64_t den, bool strict)
    : num_(num), den_(den), strict_(strict) {
  if (den_ == 0) fail(ErrorCode::invalid_argument, "threshold denominator is zero");
  const std::uint64_t g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
  if (num_ <= den_) {
    fail(ErrorCode::invalid_argument,
         "threshold must exceed 1, got " + std::to_string(num) + "/" +
             std::to_string(den));
  }
}

Threshold Threshold::dejean(std::uint32_t n, bool strict) {
  if (n < 2) fail(ErrorCode::invalid_argument, "n must be at least 2");
  return Threshold(n, n - 1, strict);
}

std::string Threshold::to_string() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  if (strict_) s += "+";
  return s;
}

std::strong_ordering operator<=>(const Threshold& a, const Threshold& b) noexcept {
  const auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
  const auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
  if (lhs != rhs) return lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.strict_ <=> b.strict_;
}

std::uint64_t min_violation_length(std::uint64_t period, const Threshold& t) {
  const auto scaled = static_cast<unsigned __int128>(period) * t.num();
  // scaled / den > period because num > den, so both results exceed period.
  if (t.strict()) return static_cast<std::uint64_t>(scaled / t.den() + 1);
  return static_cast<std::uint64_t>((scaled + t.den() - 1) / t.den());
}

}  // namespace powfree
