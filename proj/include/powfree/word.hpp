#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "powfree/threshold.hpp"

namespace powfree {

using Letter = std::uint16_t;

/// A finite word over the alphabet {1..k}.
class Word {
 public:
  /// Throws Error(invalid_argument) if k == 0 or any letter is outside [1, k].
  Word(std::vector<Letter> letters, std::uint32_t k);

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::uint32_t alphabet_size() const noexcept { return k_; }
  std::size_t size() const noexcept { return letters_.size(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
  std::uint32_t k_;
};

/// A located repetition word[start, start + length) of the given period.
struct ViolationWitness {
  std::size_t start = 0;
  std::size_t period = 0;
  std::size_t length = 0;
  std::uint64_t exponent_num = 0;  // length / period in lowest terms
  std::uint64_t exponent_den = 1;

  friend bool operator==(const ViolationWitness&,
                         const ViolationWitness&) = default;
};

ViolationWitness make_witness(std::size_t start, std::size_t period,
                              std::size_t length);

/// The repetition left after erasing its first period.
inline std::size_t tail_length(const ViolationWitness& v) noexcept {
  return v.length - v.period;
}

/// Restricts which forbidden powers count as violations: when set, only powers
/// whose tail is at most `*tail_max` letters long are rejected.
using TailLimit = std::optional<std::uint64_t>;

/// First forbidden power in `w`: smallest end index, then smallest period. The
/// reported factor is the shortest forbidden one with that end and period.
std::optional<ViolationWitness> find_violation(std::span<const Letter> w,
                                               const Threshold& t,
                                               TailLimit tail_max = {});

inline std::optional<ViolationWitness> find_violation(const Word& w,
                                                      const Threshold& t) {
  return find_violation(w.letters(), t);
}

inline bool is_free(std::span<const Letter> w, const Threshold& t,
                    TailLimit tail_max = {}) {
  return !find_violation(w, t, tail_max).has_value();
}

/// Precomputed per-period suffix lengths for one threshold, used to test
/// whether appending the last letter of a word keeps it free.
class ExtensionChecker {
 public:
  ExtensionChecker(const Threshold& t, std::size_t max_length,
                   TailLimit tail_max = {});

  /// Requires w[0, |w|-1) to be free under the same threshold and tail limit.
  /// Returns true iff w is free.
  bool extension_ok(std::span<const Letter> w) const noexcept {
    const std::size_t n = w.size();
    for (const auto& [period, length] : probes_) {
      if (length > n) break;
      const Letter* tail = w.data() + n - (length - period);
      const Letter* end = w.data() + n;
      bool periodic = true;
      for (const Letter* p = tail; p != end; ++p) {
        if (*p != *(p - period)) {
          periodic = false;
          break;
        }
      }
      if (periodic) return false;
    }
    return true;
  }

  const Threshold& threshold() const noexcept { return threshold_; }
  const TailLimit& tail_max() const noexcept { return tail_max_; }

 private:
  struct Probe {
    std::size_t period;
    std::size_t length;
  };
  Threshold threshold_;
  TailLimit tail_max_;
  std::vector<Probe> probes_;  // ascending period, hence ascending length
};

/// Convenience wrapper; builds the probe table on every call.
bool extension_ok(std::span<const Letter> w, const Threshold& t,
                  TailLimit tail_max = {});

}  // namespace powfree
