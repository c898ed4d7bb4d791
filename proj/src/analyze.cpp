#include "powfree/analyze.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "powfree/error.hpp"

namespace powfree {

namespace {

double log_of(const mpz_class& v) {
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp) * std::log(2.0);
}

std::optional<double> last_ratio(const CountSeries& s) {
  const auto& c = s.counts;
  if (c.size() < 2 || c[c.size() - 2] == 0) return std::nullopt;
  return mpq_class(c.back(), c[c.size() - 2]).get_d();
}

std::string letters_text(const std::vector<Letter>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

// Length of the longest suffix of w with period `period`.
std::size_t periodic_suffix(const std::vector<Letter>& w, std::size_t period) {
  std::size_t run = period;
  const std::size_t end = w.size();
  while (run < end && w[end - 1 - (run - period)] == w[end - 1 - run]) ++run;
  return run;
}

struct AuditPartial {
  std::vector<std::uint64_t> counts;
  std::vector<std::set<std::vector<Letter>>> prefixes;
  std::uint64_t f_size = 0;
  bool determined = true;
  std::vector<std::string> counterexamples;
};

}  // namespace

GrowthEstimate growth_estimate(const CountSeries& series,
                               const std::optional<BoundCertificate>& cert) {
  if (series.counts.size() < 3)
    fail(ErrorCode::invalid_argument, "growth estimate needs C_0..C_2 at least");

  GrowthEstimate est;
  est.k = series.k;
  est.threshold = series.threshold;

  const auto& c = series.counts;
  bool vanished = false;
  est.upper = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] == 0) {
      vanished = true;
      break;
    }
    est.upper = std::min(est.upper, std::exp(log_of(c[i]) / static_cast<double>(i)));
  }
  if (vanished) est.upper = 0;

  for (std::size_t i = 0; i + 1 < c.size() && c[i] != 0; ++i)
    est.ratios.emplace_back(mpq_class(c[i + 1], c[i]));
  for (auto& r : est.ratios) r.canonicalize();

  if (cert) {
    if (cert->k != series.k || series.threshold != Threshold::dejean(cert->n, cert->strict) ||
        series.tail_max) {
      fail(ErrorCode::invalid_argument, "certificate does not match the series");
    }
    est.lower = cert->x_witness;
    est.lower_certified = true;
  } else {
    est.lower = *std::min_element(est.ratios.begin(), est.ratios.end());
  }
  return est;
}

std::vector<std::size_t> doubling_lengths(const CountSeries& series) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= series.max_length() && !series.counts.empty(); i *= 2)
    out.push_back(i);
  return out;
}

bool doubling_non_increasing(const CountSeries& series) {
  const auto& c = series.counts;
  for (std::size_t i = 1; 2 * i < c.size(); i *= 2)
    if (c[2 * i] > c[i] * c[i]) return false;
  return true;
}

bool FjAudit::rows_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const FjAuditRow& r) { return r.pass(); });
}

FjAudit fj_audit(std::uint32_t k, std::uint32_t n, bool strict,
                 std::size_t prefix_length, const AuditOptions& options) {
  if (k == 0) fail(ErrorCode::invalid_argument, "alphabet size must be positive");
  const Threshold t = Threshold::dejean(n, strict);
  {
    mpz_class words;
    mpz_ui_pow_ui(words.get_mpz_t(), k, prefix_length + 1);
    if (words > mpz_class(static_cast<unsigned long>(options.budget))) {
      fail(ErrorCode::budget_exceeded,
           "audit would examine k^(i+1) = " + words.get_str() +
               " words, above the budget of " + std::to_string(options.budget));
    }
  }

  FjAudit audit;
  audit.k = k;
  audit.n = n;
  audit.strict = strict;
  audit.prefix_length = prefix_length;

  const std::size_t full = prefix_length + 1;
  std::vector<std::size_t> tails;  // tails[j] for periods that fit in `full`
  for (std::size_t j = 1;; ++j) {
    const auto len = min_violation_length(j, t);
    if (len > full) break;
    tails.resize(j + 1);
    tails[j] = static_cast<std::size_t>(len) - j;
  }
  const std::size_t periods = tails.empty() ? 0 : tails.size() - 1;

  // Words are split by first letter; F_j prefixes include that letter, so
  // injectivity can be checked within each part.
  auto scan = [&](Letter first, AuditPartial& out) {
    if (prefix_length == 0) return;
    std::vector<Letter> w(full, 1);
    w[0] = first;
    std::vector<Letter> prefix;
    while (true) {
      const std::span<const Letter> head(w.data(), prefix_length);
      if (is_free(head, t)) {
        for (std::uint32_t a = 1; a <= k; ++a) {
          w[prefix_length] = static_cast<Letter>(a);
          if (is_free(w, t)) continue;
          ++out.f_size;
          for (std::size_t j = 1; j <= periods; ++j) {
            const std::size_t run = periodic_suffix(w, j);
            if (run < j + tails[j]) continue;
            ++out.counts[j];
            if (run != j + tails[j]) {
              out.determined = false;
              out.counterexamples.push_back("period " + std::to_string(j) +
                                            ": repetition longer than minimal in " +
                                            letters_text(w));
            }
            prefix.assign(w.begin(), w.end() - static_cast<std::ptrdiff_t>(tails[j]));
            if (!is_free(prefix, t)) {
              out.determined = false;
              out.counterexamples.push_back("period " + std::to_string(j) +
                                            ": prefix not free in " + letters_text(w));
            }
            if (!out.prefixes[j].insert(prefix).second) {
              out.determined = false;
              out.counterexamples.push_back("period " + std::to_string(j) +
                                            ": prefix shared by two words, " +
                                            letters_text(w));
            }
          }
        }
      }
      // Odometer over positions 1..prefix_length-1; position 0 stays fixed.
      std::size_t pos = prefix_length;
      while (pos > 1 && w[pos - 1] == k) w[--pos] = 1;
      if (pos <= 1) break;
      ++w[pos - 1];
    }
  };

  const unsigned workers = std::max(
      1u, std::min<unsigned>(options.workers ? options.workers
                                             : std::max(1u, std::thread::hardware_concurrency()),
                             k));
  std::vector<AuditPartial> partial(k);
  for (auto& p : partial) {
    p.counts.assign(periods + 1, 0);
    p.prefixes.resize(periods + 1);
  }
  {
    std::atomic<std::uint32_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint32_t a = next++; a < k; a = next++)
          scan(static_cast<Letter>(a + 1), partial[a]);
      });
    }
  }

  const CountSeries series = count_free(k, t, full, Method::incremental, {.workers = 1});
  audit.balance = mpz_class(k) * series.counts[prefix_length] - series.counts[full];

  std::vector<std::uint64_t> counts(periods + 1, 0);
  for (const auto& p : partial) {
    for (std::size_t j = 1; j <= periods; ++j) counts[j] += p.counts[j];
    audit.f_size += p.f_size;
    audit.suffix_determined = audit.suffix_determined && p.determined;
    audit.counterexamples.insert(audit.counterexamples.end(), p.counterexamples.begin(),
                                 p.counterexamples.end());
  }
  for (std::size_t j = 1; j <= periods; ++j) {
    FjAuditRow row;
    row.period = j;
    row.tail = tails[j];
    row.count = counts[j];
    row.bound = series.counts[full - tails[j]];
    audit.row_sum += mpz_class(static_cast<unsigned long>(row.count));
    audit.rows.push_back(std::move(row));
  }
  return audit;
}

bool suffix_determination_check(std::uint32_t k, std::uint32_t n, bool strict,
                                std::size_t prefix_length,
                                const AuditOptions& options) {
  return fj_audit(k, n, strict, prefix_length, options).suffix_determined;
}

std::vector<ReportRow> conjecture_report(const ReportRequest& request) {
  if (request.n_min < 2 || request.n_max < request.n_min)
    fail(ErrorCode::invalid_argument, "n range must satisfy 2 <= n_min <= n_max");

  std::vector<std::uint32_t> ks = request.ks;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<ReportRow> rows;
  for (std::uint32_t n = request.n_min; n <= request.n_max; ++n) {
    for (std::uint32_t k : ks) {
      if (k <= n) continue;
      ReportRow row;
      row.k = k;
      row.n = n;
      row.root_free = closed_form_root(k, n, false);
      row.root_plus = closed_form_root(k, n, true);
      row.target_free = asymptotic_target(k, n, false);
      row.target_plus = asymptotic_target(k, n, true);
      const double k2 = static_cast<double>(k) * k;
      if (row.root_free) row.residual_free_k2 = (*row.root_free - row.target_free) * k2;
      if (row.root_plus) row.residual_plus_k2 = (*row.root_plus - row.target_plus) * k2;
      if (row.root_free && row.root_plus) row.big_jump = *row.root_plus - *row.root_free;
      if (k > n + 1) {
        const auto next_plus = closed_form_root(k, n + 1, true);
        if (row.root_free && next_plus) row.small_variation = *row.root_free - *next_plus;
      }

      if (request.max_length > 0) {
        for (bool strict : {false, true}) {
          const Threshold t = Threshold::dejean(n, strict);
          const CountSeries full = count_free(k, t, request.max_length, Method::canonical,
                                              request.enumeration);
          const CountSeries tail =
              count_tail_restricted(k, t, request.tail_max, request.max_length,
                                    Method::canonical, request.enumeration);
          std::optional<mpq_class> certified;
          if (rational_witness(k, n, strict, request.precision_bits))
            certified = certify(k, n, strict, full, request.precision_bits).x_witness;
          (strict ? row.certified_plus : row.certified_free) = certified;
          (strict ? row.ratio_plus : row.ratio_free) = last_ratio(full);
          (strict ? row.ratio_tail_plus : row.ratio_tail_free) = last_ratio(tail);
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace powfree
