#include "powfree/word.hpp"

#include <numeric>
#include <string>

#include "powfree/error.hpp"

namespace powfree {

Word::Word(std::vector<Letter> letters, std::uint32_t k)
    : letters_(std::move(letters)), k_(k) {
  if (k_ == 0) fail(ErrorCode::invalid_argument, "alphabet size must be positive");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] < 1 || letters_[i] > k_) {
      fail(ErrorCode::invalid_argument,
           "letter " + std::to_string(letters_[i]) + " at position " +
               std::to_string(i) + " is outside [1, " + std::to_string(k_) + "]");
    }
  }
}

ViolationWitness make_witness(std::size_t start, std::size_t period,
                              std::size_t length) {
  const std::size_t g = std::gcd(length, period);
  return ViolationWitness{start, period, length, length / g, period / g};
}

std::optional<ViolationWitness> find_violation(std::span<const Letter> w,
                                               const Threshold& t,
                                               TailLimit tail_max) {
  // For each end position, measure the longest run of each period ending
  // there and compare it against the shortest forbidden length.
  for (std::size_t end = 2; end <= w.size(); ++end) {
    for (std::size_t period = 1; period < end; ++period) {
      const std::uint64_t needed = min_violation_length(period, t);
      if (needed > end) break;
      if (tail_max && needed - period > *tail_max) break;
      std::size_t run = period;
      while (run < end && w[end - 1 - (run - period)] == w[end - 1 - run]) ++run;
      if (run >= needed) return make_witness(end - needed, period, needed);
    }
  }
  return std::nullopt;
}

ExtensionChecker::ExtensionChecker(const Threshold& t, std::size_t max_length,
                                   TailLimit tail_max)
    : threshold_(t), tail_max_(tail_max) {
  for (std::size_t period = 1;; ++period) {
    const std::uint64_t length = min_violation_length(period, t);
    if (length > max_length) break;
    if (tail_max_ && length - period > *tail_max_) break;
    probes_.push_back({period, static_cast<std::size_t>(length)});
  }
}

bool extension_ok(std::span<const Letter> w, const Threshold& t,
                  TailLimit tail_max) {
  return ExtensionChecker(t, w.size(), tail_max).extension_ok(w);
}

}  // namespace powfree
