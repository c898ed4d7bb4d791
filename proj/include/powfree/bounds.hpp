#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powfree/count_series.hpp"

namespace powfree {

/// Exact evidence that C_{i+1} >= x_witness * C_i held for every
/// 1 <= i <= verified_up_to of the series identified by `series_digest`.
struct BoundCertificate {
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  bool strict = false;
  mpq_class x_witness;
  mpq_class condition_margin;
  std::size_t verified_up_to = 0;
  std::string series_digest;
};

inline constexpr unsigned default_precision_bits = 48;

/// k - (n-1)x/(x-1) - x, plus one when `strict`. The growth lemmas apply to any
/// x > 1 where this is nonnegative. Requires x > 1.
mpq_class condition_margin(std::uint32_t k, std::uint32_t n, bool strict,
                           const mpq_class& x);
double condition_margin(std::uint32_t k, std::uint32_t n, bool strict, double x);

/// Largest x > 1 with a zero condition margin, or nothing when no x > 1
/// satisfies the condition (always the case for k <= n). The discriminant is
/// exact; the only rounding is one square root.
std::optional<double> closed_form_root(std::uint32_t k, std::uint32_t n,
                                       bool strict);

/// Dyadic rational floor(root * 2^(bits+1)) / 2^(bits+1): within 2^-bits of
/// the closed-form root, never above it, with the condition checked exactly.
std::optional<mpq_class> rational_witness(
    std::uint32_t k, std::uint32_t n, bool strict,
    unsigned precision_bits = default_precision_bits);

/// Checks every ratio C_{i+1} / C_i of `series` against a rational witness.
///
/// `series` must count words free for n/(n-1) (n/(n-1)+ when strict) over k
/// letters with no tail restriction. Throws Error(no_witness) when the
/// condition has no solution x > 1, and Error(lemma_violation) if any ratio
/// check fails. The lemmas rule the latter out, so it signals a counting bug.
BoundCertificate certify(std::uint32_t k, std::uint32_t n, bool strict,
                         const CountSeries& series,
                         unsigned precision_bits = default_precision_bits);

/// k+1-n-(n-1)/k, or k+2-n-(n-1)/k when strict.
double asymptotic_target(std::uint32_t k, std::uint32_t n, bool strict);

/// First `terms` Taylor coefficients at y = 0 of the closed-form root scaled by
/// y = 1/k, so that root(k) = k * f(1/k).
std::vector<mpq_class> root_series(std::uint32_t n, bool strict,
                                   std::size_t terms);

/// (c0, c1, c2) of the non-strict expansion.
std::array<mpq_class, 3> taylor_coefficients(std::uint32_t n);

/// Stable identifier of a series' language and counts.
std::string series_digest(const CountSeries& series);

}  // namespace powfree
