// Acceptance suite: one PASS/FAIL line per criterion, with its runtime and
// limit. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "powfree/analyze.hpp"
#include "powfree/bounds.hpp"
#include "powfree/enumerate.hpp"
#include "powfree/error.hpp"

using namespace powfree;

namespace {

// Collects the first few failures of a criterion.
struct Log {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Log&)> run;
};

std::string label(std::uint32_t k, std::uint32_t n, bool strict) {
  return "k=" + std::to_string(k) + " n=" + std::to_string(n) + (strict ? "+" : "");
}

std::vector<mpz_class> as_mpz(const std::vector<std::uint64_t>& v) {
  std::vector<mpz_class> out;
  for (auto x : v) out.emplace_back(static_cast<unsigned long>(x));
  return out;
}

void base_cases(Log& log) {
  for (std::uint32_t k = 3; k <= 8; ++k) {
    for (std::uint32_t n = 2; n <= 5; ++n) {
      for (bool strict : {false, true}) {
        const auto s = count_free(k, Threshold::dejean(n, strict), 2, default_method(k));
        const mpz_class c2 = (n == 2 && strict) ? mpz_class(k * k) : mpz_class(k * (k - 1));
        log.expect(s.counts[1] == k && s.counts[2] == c2, label(k, n, strict));
      }
    }
  }
}

void oracle_equivalence(Log& log) {
  const std::size_t L = 9;
  for (std::uint32_t k = 1; k <= 4; ++k) {
    for (std::uint32_t n = 2; n <= 5; ++n) {
      for (bool strict : {false, true}) {
        const Threshold t = Threshold::dejean(n, strict);
        const auto naive = count_free(k, t, L, Method::naive);
        const auto inc = count_free(k, t, L, Method::incremental);
        const auto can = count_free(k, t, L, Method::canonical);
        log.expect(naive.counts == inc.counts, "incremental " + label(k, n, strict));
        log.expect(naive.counts == can.counts, "canonical " + label(k, n, strict));
      }
    }
  }
}

void ratio_certificates(Log& log, bool strict,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>> cases) {
  for (auto [k, n] : cases) {
    try {
      const auto s = count_free(k, Threshold::dejean(n, strict), 10, Method::canonical);
      const auto cert = certify(k, n, strict, s);
      bool all = cert.verified_up_to == 9 && cert.condition_margin >= 0;
      for (std::size_t i = 1; i < 10; ++i) all = all && s.counts[i + 1] >= cert.x_witness * s.counts[i];
      log.expect(all, label(k, n, strict));
    } catch (const Error& e) {
      log.expect(false, label(k, n, strict) + ": " + e.what());
    }
  }
}

struct AuditInstance {
  std::uint32_t k, n;
  bool strict;
  std::size_t i;
};

const AuditInstance audit_instances[] = {{4, 3, false, 6}, {3, 2, false, 5}, {2, 2, true, 6}};

void audits(Log& log) {
  for (const auto& c : audit_instances) {
    const auto a = fj_audit(c.k, c.n, c.strict, c.i);
    const std::string name = label(c.k, c.n, c.strict) + " i=" + std::to_string(c.i);
    log.expect(!a.rows.empty(), name + ": no rows");
    log.expect(a.rows_pass(), name + ": F_j_count above bound");
    log.expect(a.sum_dominates(), name + ": row sum below k C_i - C_{i+1}");
    log.expect(a.balance_exact(), name + ": k C_i - C_{i+1} != |F|");
  }
}

void suffix_determination(Log& log) {
  for (const auto& c : audit_instances)
    log.expect(suffix_determination_check(c.k, c.n, c.strict, c.i),
               label(c.k, c.n, c.strict) + " i=" + std::to_string(c.i));
}

void closed_form(Log& log) {
  std::size_t rooted = 0;
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (std::uint32_t k = n + 4; k <= n + 100; ++k) {
      for (bool strict : {false, true}) {
        const auto root = closed_form_root(k, n, strict);
        const auto x = rational_witness(k, n, strict);
        const std::string name = label(k, n, strict);
        if (!root) {
          // No x > 1 satisfies the condition, so nothing can be certified.
          log.expect(!x, name + ": witness without a root");
          continue;
        }
        ++rooted;
        log.expect(std::abs(condition_margin(k, n, strict, *root)) <= 1e-9, name + ": margin at root");
        log.expect(x.has_value(), name + ": no witness");
        if (!x) continue;
        log.expect(*x > 1 && condition_margin(k, n, strict, *x) >= 0, name + ": witness margin");
        log.expect(x->get_d() <= *root, name + ": witness above root");
      }
    }
  }
  log.expect(rooted > 900, "too few pairs with a root");
}

void asymptotics(Log& log) {
  for (double k : {1e2, 1e3, 1e4}) {
    const auto kk = static_cast<std::uint32_t>(k);
    const double residual = std::abs(*closed_form_root(kk, 3, false) - (k + 1 - 3 - 2 / k)) * k * k;
    std::ostringstream os;
    os << "k=" << kk << " residual*k^2=" << residual;
    log.expect(residual <= 10, os.str());
  }
  for (std::uint32_t n = 2; n <= 6; ++n) {
    const auto c = taylor_coefficients(n);
    const mpq_class one_minus_n(1 - static_cast<long>(n));
    log.expect(c[0] == 1 && c[1] == one_minus_n && c[2] == one_minus_n, "taylor n=" + std::to_string(n));
  }
}

void no_certificate(Log& log) {
  try {
    certify(2, 2, true, count_free(2, Threshold(2, 1, true), 5, Method::naive));
    log.expect(false, "certify(2, 2, +) returned a certificate");
  } catch (const Error& e) {
    log.expect(e.code() == ErrorCode::no_witness, std::string("wrong error: ") + e.what());
  }
  const auto naive = count_free(2, Threshold(2, 1, true), 5, Method::naive);
  log.expect(naive.counts == as_mpz({1, 2, 4, 6, 10, 14}), "binary 2+ counts");
  log.expect(naive.counts == as_mpz(oracle::counts(2, 2, 1, true, 5)), "binary 2+ vs brute force");
}

void fekete(Log& log) {
  const auto ternary = count_free(3, Threshold(2, 1), 24, Method::incremental);
  const auto est3 = growth_estimate(ternary);
  log.expect(doubling_non_increasing(ternary), "k=3 t=2 doubling");
  log.expect(est3.lower.get_d() <= est3.upper, "k=3 t=2 lower <= upper");

  const auto twenty = count_free(20, Threshold(3, 2), 10, Method::canonical);
  const auto cert = certify(20, 3, false, twenty);
  const auto est20 = growth_estimate(twenty, cert);
  log.expect(doubling_non_increasing(twenty), "k=20 t=3/2 doubling");
  log.expect(est20.lower_certified, "k=20 t=3/2 lower not certified");
  log.expect(est20.lower.get_d() <= est20.upper, "k=20 t=3/2 lower <= upper");
}

void tail_restricted(Log& log) {
  const std::size_t L = 10;
  for (std::uint32_t k = 2; k <= 4; ++k) {
    for (const Threshold& t : {Threshold(2, 1), Threshold(2, 1, true), Threshold(3, 2), Threshold(7, 4, true)}) {
      const auto full = count_free(k, t, L, Method::incremental);
      for (std::uint64_t tail : {std::uint64_t{L}, std::uint64_t{L + 5}}) {
        const auto restricted = count_tail_restricted(k, t, tail, L, Method::canonical);
        log.expect(restricted.counts == full.counts,
                   "k=" + std::to_string(k) + " " + t.to_string() + " tail_max=" + std::to_string(tail));
      }
    }
  }
  const std::size_t M = 8;
  const auto tail1 = count_tail_restricted(3, Threshold(2, 1), 1, M, Method::incremental);
  log.expect(tail1.counts == as_mpz(oracle::counts(3, 2, 1, false, M, 1)), "k=3 t=2 tail_max=1 vs oracle");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "base cases C_1 = k, C_2", 1, base_cases},
      {2, "engines agree with the naive engine (k<=4, n<=5, L<=9)", 120, oracle_equivalence},
      {3, "ratio certificates, non-strict", 300,
       [](Log& log) { ratio_certificates(log, false, {{10, 3}, {20, 3}, {12, 4}}); }},
      {4, "ratio certificates, strict", 300,
       [](Log& log) { ratio_certificates(log, true, {{10, 3}, {12, 4}}); }},
      {5, "F_j audit", 120, audits},
      {6, "suffix determination", 120, suffix_determination},
      {7, "closed-form root and rational witness", 10, closed_form},
      {8, "asymptotic residual and Taylor coefficients", 1, asymptotics},
      {9, "no-certificate regime", 1, no_certificate},
      {10, "Fekete monotonicity, lower <= upper", 600, fekete},
      {11, "tail-restricted counts", 60, tail_restricted},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Log log;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(log);
    } catch (const std::exception& e) {
      log.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) log.expect(false, "runtime above " + std::to_string(c.limit_seconds) + " s");
    if (!log.ok()) ++failed;
    std::printf("%s  %2d  %-56s %8.3f s (limit %g s, %zu checks)\n", log.ok() ? "PASS" : "FAIL", c.id,
                c.title.c_str(), seconds, c.limit_seconds, log.checks);
    for (const auto& f : log.failures) std::printf("          %s\n", f.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
