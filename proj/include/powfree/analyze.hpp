#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powfree/bounds.hpp"
#include "powfree/count_series.hpp"
#include "powfree/enumerate.hpp"

namespace powfree {

struct GrowthEstimate {
  std::uint32_t k = 0;
  Threshold threshold{2, 1};
  /// Certified witness when a certificate was supplied, else min C_{i+1}/C_i.
  mpq_class lower;
  bool lower_certified = false;
  /// min over i >= 1 of C_i^(1/i); zero once some C_i vanishes.
  double upper = 0;
  /// C_{i+1}/C_i for every i with C_i > 0.
  std::vector<mpq_class> ratios;
};

/// Throws Error(invalid_argument) for series shorter than three entries or a
/// certificate that does not belong to the series' language.
GrowthEstimate growth_estimate(const CountSeries& series,
                               const std::optional<BoundCertificate>& cert = {});

/// Lengths 1, 2, 4, ... available in the series.
std::vector<std::size_t> doubling_lengths(const CountSeries& series);

/// C_{2i} <= C_i^2 for every doubling pair, i.e. C_i^(1/i) does not increase
/// along the doubling subsequence. Exact.
bool doubling_non_increasing(const CountSeries& series);

struct FjAuditRow {
  std::size_t period = 0;
  /// Letters forced by the period at the end of every word in F_j.
  std::size_t tail = 0;
  std::uint64_t count = 0;
  /// C_{i+1-tail}.
  mpz_class bound;
  bool pass() const { return count <= bound; }
};

/// Exhaustive check of the counting step behind the growth lemmas for one
/// prefix length i: F is the set of non-free words of length i+1 with a free
/// prefix of length i, F_j the part of F witnessed at period j.
struct FjAudit {
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  bool strict = false;
  std::size_t prefix_length = 0;
  std::vector<FjAuditRow> rows;
  std::uint64_t f_size = 0;     // |F| by direct enumeration
  mpz_class balance;            // k C_i - C_{i+1}
  mpz_class row_sum;            // sum |F_j|
  /// Every word counted in F_j has a longest period-j suffix of exactly
  /// j + tail letters, a free prefix once the tail is removed, and no other
  /// word of F_j shares that prefix.
  bool suffix_determined = true;
  std::vector<std::string> counterexamples;

  bool rows_pass() const;
  bool sum_dominates() const { return row_sum >= f_size; }
  bool balance_exact() const { return balance == f_size; }
  bool all_pass() const {
    return rows_pass() && sum_dominates() && balance_exact() && suffix_determined;
  }
};

struct AuditOptions {
  unsigned workers = 0;
  /// Largest k^(i+1) accepted.
  std::uint64_t budget = 100'000'000;
};

/// Throws Error(budget_exceeded) when k^(i+1) exceeds options.budget.
FjAudit fj_audit(std::uint32_t k, std::uint32_t n, bool strict,
                 std::size_t prefix_length, const AuditOptions& options = {});

bool suffix_determination_check(std::uint32_t k, std::uint32_t n, bool strict,
                                std::size_t prefix_length,
                                const AuditOptions& options = {});

struct ReportRequest {
  std::uint32_t n_min = 3;
  std::uint32_t n_max = 3;
  std::vector<std::uint32_t> ks;
  /// Counts are taken to this length for the certified and ratio columns; 0
  /// skips enumeration entirely.
  std::size_t max_length = 6;
  std::uint64_t tail_max = 2;
  unsigned precision_bits = default_precision_bits;
  EnumerationOptions enumeration;
};

/// One (k, n) pair with k > n. Optional fields are empty when the quantity does
/// not exist at these parameters.
struct ReportRow {
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::optional<double> root_free, root_plus;
  double target_free = 0, target_plus = 0;
  std::optional<mpq_class> certified_free, certified_plus;
  /// root_plus(k, n) - root_free(k, n).
  std::optional<double> big_jump;
  /// root_free(k, n) - root_plus(k, n + 1).
  std::optional<double> small_variation;
  /// (root - target) * k^2.
  std::optional<double> residual_free_k2, residual_plus_k2;
  /// C_L / C_{L-1} of the full and tail-restricted languages.
  std::optional<double> ratio_free, ratio_plus, ratio_tail_free, ratio_tail_plus;
};

std::vector<ReportRow> conjecture_report(const ReportRequest& request);

}  // namespace powfree
