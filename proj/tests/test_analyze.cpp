#include <doctest.h>

#include <cmath>

#include "powfree/analyze.hpp"
#include "powfree/error.hpp"

using namespace powfree;

TEST_CASE("growth estimate for ternary square-free words") {
  const auto s = count_free(3, Threshold(2, 1), 24, Method::incremental);
  const auto est = growth_estimate(s);
  CHECK(est.upper >= 1.30);
  CHECK(est.upper == doctest::Approx(std::pow(7032.0, 1.0 / 24)));
  CHECK_FALSE(est.lower_certified);
  CHECK(est.lower.get_d() <= est.upper + 1e-9);
  CHECK(est.ratios.size() == 24);
  CHECK(est.ratios[0] == 3);
  CHECK(est.ratios[23] == mpq_class(1172, 903));
  CHECK(doubling_non_increasing(s));
  CHECK(doubling_lengths(s) == std::vector<std::size_t>{1, 2, 4, 8, 16});
}

TEST_CASE("growth estimate with a certificate") {
  const auto s = count_free(20, Threshold(3, 2), 10, Method::canonical);
  const auto cert = certify(20, 3, false, s);
  const auto est = growth_estimate(s, cert);
  CHECK(est.lower_certified);
  CHECK(est.lower.get_d() == doctest::Approx(17.8815).epsilon(1e-4));
  CHECK(est.upper >= est.lower.get_d());
  CHECK(doubling_non_increasing(s));

  const auto other = count_free(20, Threshold(3, 2, true), 10, Method::canonical);
  CHECK_THROWS_AS(growth_estimate(other, cert), Error);
}

TEST_CASE("degenerate growth") {
  const auto s = count_free(1, Threshold(2, 1), 5, Method::incremental);
  const auto est = growth_estimate(s);
  CHECK(est.upper == 0);
  CHECK(est.lower == 0);
  CHECK(est.ratios.size() == 2);
  CHECK_THROWS_AS(growth_estimate(count_free(3, Threshold(2, 1), 1, Method::incremental)), Error);
}

TEST_CASE("ratio floor never exceeds the Fekete ceiling") {
  for (std::uint32_t k = 2; k <= 6; ++k) {
    for (std::uint32_t n = 2; n <= 5; ++n) {
      for (bool strict : {false, true}) {
        const auto s = count_free(k, Threshold::dejean(n, strict), 9, Method::canonical);
        const auto est = growth_estimate(s);
        REQUIRE(est.lower.get_d() <= est.upper + 1e-9);
        REQUIRE(doubling_non_increasing(s));
      }
    }
  }
}

TEST_CASE("hand-checked audit: ternary squares, i = 2") {
  // 6 square-free words of length 2; of their 18 extensions, the 6 ending in a
  // repeated letter fail, all at period 1, bounded by C_2 = 6.
  const auto audit = fj_audit(3, 2, false, 2);
  CHECK(audit.f_size == 6);
  CHECK(audit.balance == 6);
  REQUIRE(audit.rows.size() == 1);
  CHECK(audit.rows[0].period == 1);
  CHECK(audit.rows[0].tail == 1);
  CHECK(audit.rows[0].count == 6);
  CHECK(audit.rows[0].bound == 6);
  CHECK(audit.all_pass());
}

TEST_CASE("audits of the counting step") {
  struct Instance {
    std::uint32_t k, n;
    bool strict;
    std::size_t i;
  };
  for (const Instance& c : {Instance{4, 3, false, 6}, Instance{3, 2, false, 5}, Instance{2, 2, true, 6},
                            Instance{3, 2, false, 7}, Instance{2, 2, true, 7}, Instance{5, 4, true, 6},
                            Instance{4, 4, false, 7}}) {
    CAPTURE(c.k);
    CAPTURE(c.n);
    CAPTURE(c.strict);
    CAPTURE(c.i);
    const auto audit = fj_audit(c.k, c.n, c.strict, c.i);
    CHECK(audit.rows_pass());
    CHECK(audit.sum_dominates());
    CHECK(audit.balance_exact());
    CHECK(audit.suffix_determined);
    CHECK(audit.counterexamples.empty());
    const Threshold t = Threshold::dejean(c.n, c.strict);
    for (const auto& row : audit.rows) {
      const std::size_t expected_tail =
          c.strict ? row.period / (c.n - 1) + 1 : (row.period + c.n - 2) / (c.n - 1);
      CHECK(row.tail == expected_tail);
      CHECK(row.tail == min_violation_length(row.period, t) - row.period);
    }
    CHECK(suffix_determination_check(c.k, c.n, c.strict, c.i));
  }
}

TEST_CASE("audit results do not depend on the worker count") {
  const auto one = fj_audit(4, 3, false, 6, {.workers = 1});
  const auto many = fj_audit(4, 3, false, 6, {.workers = 3});
  CHECK(one.f_size == many.f_size);
  REQUIRE(one.rows.size() == many.rows.size());
  for (std::size_t r = 0; r < one.rows.size(); ++r) CHECK(one.rows[r].count == many.rows[r].count);
}

TEST_CASE("audit budget") {
  try {
    fj_audit(4, 3, false, 12, {.workers = 1, .budget = 1000});
    FAIL("expected budget_exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
}

TEST_CASE("conjecture report") {
  ReportRequest req;
  req.n_min = 2;
  req.n_max = 4;
  req.ks = {200, 20, 50, 100, 3};
  req.max_length = 6;
  const auto rows = conjecture_report(req);

  // k = 3 is skipped for every n >= 3 but kept for n = 2.
  CHECK(rows.size() == 13);
  CHECK(rows.front().n == 2);
  CHECK(rows.front().k == 3);

  const auto it = std::find_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.k == 20 && r.n == 3; });
  REQUIRE(it != rows.end());
  CHECK(it->target_free == doctest::Approx(17.9));
  CHECK(it->target_plus == doctest::Approx(18.9));
  REQUIRE(it->root_free);
  REQUIRE(it->root_plus);
  CHECK(*it->big_jump == doctest::Approx(*it->root_plus - *it->root_free));
  CHECK(*it->small_variation ==
        doctest::Approx(*it->root_free - *closed_form_root(20, 4, true)));
  REQUIRE(it->certified_free);
  CHECK(it->certified_free->get_d() <= *it->root_free);
  REQUIRE(it->ratio_tail_free);
  CHECK(*it->ratio_tail_free >= *it->ratio_free);

  for (const auto& r : rows) {
    if (r.k < 50 || !r.big_jump) continue;
    // Big jump is 1 + O(1/k^2); small variation is about 1/k.
    CHECK(std::abs(*r.big_jump - 1) * r.k * r.k < 10);
    if (r.small_variation) CHECK(std::abs(*r.small_variation - 1.0 / r.k) * r.k * r.k < 20);
  }
}

TEST_CASE("report without enumeration leaves count columns empty") {
  ReportRequest req;
  req.ks = {50};
  req.max_length = 0;
  const auto rows = conjecture_report(req);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].certified_free);
  CHECK_FALSE(rows[0].ratio_free);
  CHECK(rows[0].root_free);
}
