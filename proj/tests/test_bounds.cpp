#include <doctest.h>

#include <cmath>

#include "powfree/bounds.hpp"
#include "powfree/enumerate.hpp"
#include "powfree/error.hpp"

using namespace powfree;

namespace {

// Largest x > 1 with a nonnegative margin, from the raw condition alone: the
// margin is concave on x > 1, so golden-section search finds its maximum and
// bisection to the right of it finds the larger zero.
std::optional<double> bisect_root(std::uint32_t k, std::uint32_t n, bool strict) {
  auto g = [&](double x) { return condition_margin(k, n, strict, x); };
  double a = 1.0 + 1e-12, b = k + 2.0;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 300; ++it) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    (g(c) < g(d) ? a : b) = (g(c) < g(d) ? c : d);
  }
  const double peak = (a + b) / 2;
  if (g(peak) < -1e-9) return std::nullopt;
  double lo = peak, hi = k + 2.0;
  for (int it = 0; it < 300; ++it) {
    const double mid = (lo + hi) / 2;
    (g(mid) >= 0 ? lo : hi) = mid;
  }
  return lo;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("closed_form_root examples") {
  const auto r = closed_form_root(20, 3, false);
  REQUIRE(r);
  CHECK(*r == doctest::Approx((19 + std::sqrt(281.0)) / 2).epsilon(1e-14));
  CHECK(*r == doctest::Approx(17.88153).epsilon(1e-6));

  const auto b = closed_form_root(7, 3, false);
  REQUIRE(b);
  CHECK(*b == doctest::Approx((6 + std::sqrt(8.0)) / 2).epsilon(1e-14));
  CHECK(std::abs(condition_margin(7, 3, false, *b)) < 1e-12);

  CHECK_FALSE(closed_form_root(2, 2, true));
  CHECK_FALSE(bisect_root(2, 2, true));
  CHECK_FALSE(closed_form_root(3, 3, false));
  CHECK_FALSE(closed_form_root(3, 3, true));
}

TEST_CASE("closed_form_root matches bisection on the raw condition") {
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (std::uint32_t k = 2; k <= 40; ++k) {
      for (bool strict : {false, true}) {
        const auto closed = closed_form_root(k, n, strict);
        const auto scanned = bisect_root(k, n, strict);
        CAPTURE(k);
        CAPTURE(n);
        CAPTURE(strict);
        REQUIRE(closed.has_value() == scanned.has_value());
        // Tangent cases (zero discriminant) only pin the root to sqrt(eps).
        if (closed) REQUIRE(*closed == doctest::Approx(*scanned).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("closed-form root zeroes the condition") {
  for (std::uint32_t n = 2; n <= 20; ++n) {
    for (std::uint32_t k : {n + 10, n + 17, 2 * n + 50, 1000u, 99'991u, 1'000'000u}) {
      for (bool strict : {false, true}) {
        const auto r = closed_form_root(k, n, strict);
        REQUIRE(r);
        REQUIRE(std::abs(condition_margin(k, n, strict, *r)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("rational witnesses") {
  const auto x = rational_witness(20, 3, false, 30);
  REQUIRE(x);
  const double root = (19 + std::sqrt(281.0)) / 2;
  CHECK(x->get_d() <= root);
  CHECK(x->get_d() > root - std::ldexp(1.0, -30));
  CHECK(condition_margin(20, 3, false, *x) >= 0);

  const auto y = rational_witness(7, 3, false);
  REQUIRE(y);
  CHECK(y->get_d() <= *closed_form_root(7, 3, false));
  CHECK(y->get_d() > *closed_form_root(7, 3, false) - 1e-12);
  CHECK(condition_margin(7, 3, false, *y) >= 0);

  CHECK_FALSE(rational_witness(2, 2, true));
}

TEST_CASE("witnesses stay below the root and grow with precision") {
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (std::uint32_t k = n + 1; k <= n + 60; ++k) {
      for (bool strict : {false, true}) {
        const auto root = closed_form_root(k, n, strict);
        std::optional<mpq_class> previous;
        for (unsigned bits : {4u, 10u, 24u, 48u, 80u}) {
          const auto x = rational_witness(k, n, strict, bits);
          REQUIRE(x.has_value() == root.has_value());
          if (!x) continue;
          REQUIRE(condition_margin(k, n, strict, *x) >= 0);
          // Exactly below the root: the larger root of x^2 - b x + c is at
          // least b/2, and x itself must satisfy the quadratic.
          const long b = static_cast<long>(k) - n + (strict ? 3 : 2);
          REQUIRE(*x * 2 >= b);
          REQUIRE(x->get_d() <= *root + 1e-12);
          REQUIRE(*root - x->get_d() <= std::ldexp(1.0, -static_cast<int>(std::min(bits, 40u))) + 1e-12);
          if (previous) REQUIRE(*x >= *previous);
          previous = x;
        }
      }
    }
  }
}

TEST_CASE("the plus threshold always admits a larger root") {
  for (std::uint32_t n = 2; n <= 12; ++n)
    for (std::uint32_t k = n + 1; k <= 400; k += 7) {
      const auto plain = closed_form_root(k, n, false);
      const auto plus = closed_form_root(k, n, true);
      if (plain) {
        REQUIRE(plus);
        REQUIRE(*plus > *plain);
      }
    }
}

TEST_CASE("certify") {
  SUBCASE("k=20, n=3 to length 10") {
    const auto s = count_free(20, Threshold::dejean(3, false), 10, Method::canonical);
    const auto cert = certify(20, 3, false, s);
    CHECK(cert.verified_up_to == 9);
    CHECK(cert.condition_margin >= 0);
    CHECK(cert.x_witness.get_d() == doctest::Approx(17.8816).epsilon(1e-4));
    CHECK(cert.series_digest == series_digest(s));
  }
  SUBCASE("k=10, n=4, plus, to length 8") {
    const auto s = count_free(10, Threshold::dejean(4, true), 8, Method::canonical);
    const auto cert = certify(10, 4, true, s);
    CHECK(cert.verified_up_to == 7);
    CHECK(condition_margin(10, 4, true, cert.x_witness) == cert.condition_margin);
  }
  SUBCASE("no witness") {
    const auto s = count_free(3, Threshold::dejean(3, false), 5, Method::canonical);
    CHECK(code_of([&] { certify(3, 3, false, s); }) == ErrorCode::no_witness);
    const auto binary = count_free(2, Threshold::dejean(2, true), 5, Method::canonical);
    CHECK(code_of([&] { certify(2, 2, true, binary); }) == ErrorCode::no_witness);
  }
  SUBCASE("mismatched series") {
    const auto s = count_free(20, Threshold(3, 2, true), 5, Method::canonical);
    CHECK(code_of([&] { certify(20, 3, false, s); }) == ErrorCode::invalid_argument);
    const auto tail = count_tail_restricted(20, Threshold(3, 2), 2, 5, Method::canonical);
    CHECK(code_of([&] { certify(20, 3, false, tail); }) == ErrorCode::invalid_argument);
  }
  SUBCASE("a tampered series trips the lemma check") {
    auto s = count_free(12, Threshold::dejean(4, false), 7, Method::canonical);
    s.counts[6] = s.counts[5] * 2;
    CHECK(code_of([&] { certify(12, 4, false, s); }) == ErrorCode::lemma_violation);
  }
}

TEST_CASE("asymptotic targets") {
  CHECK(asymptotic_target(20, 3, false) == doctest::Approx(17.9));
  CHECK(asymptotic_target(20, 3, true) == doctest::Approx(18.9));
  CHECK(asymptotic_target(100, 2, false) == doctest::Approx(98.99));
}

TEST_CASE("root expansion coefficients") {
  for (std::uint32_t n = 2; n <= 8; ++n) {
    const auto c = taylor_coefficients(n);
    const long nn = n;
    CHECK(c[0] == 1);
    CHECK(c[1] == 1 - nn);
    CHECK(c[2] == 1 - nn);
    const auto plus = root_series(n, true, 3);
    CHECK(plus[0] == 1);
    CHECK(plus[1] == 2 - nn);
    CHECK(plus[2] == 1 - nn);
  }
  SUBCASE("residual after three terms is O(1/k^2)") {
    const auto c = taylor_coefficients(3);
    for (double k : {1e2, 1e3, 1e4}) {
      const double root = *closed_form_root(static_cast<std::uint32_t>(k), 3, false);
      const double truncated = k * c[0].get_d() + c[1].get_d() + c[2].get_d() / k;
      CHECK(std::abs(root - truncated) * k * k < 10);
    }
  }
  SUBCASE("more terms match the closed form more closely") {
    for (bool strict : {false, true}) {
      const auto f = root_series(4, strict, 6);
      const double k = 500;
      double series = 0;
      for (std::size_t m = 0; m < f.size(); ++m) series += f[m].get_d() * std::pow(k, 1.0 - m);
      CHECK(series == doctest::Approx(*closed_form_root(500, 4, strict)).epsilon(1e-12));
    }
  }
  SUBCASE("higher coefficients match an independent arbitrary-precision expansion") {
    auto as_long = [](const std::vector<mpq_class>& v) {
      std::vector<long> out;
      for (const auto& q : v) {
        REQUIRE(q.get_den() == 1);
        out.push_back(q.get_num().get_si());
      }
      return out;
    };
    CHECK(as_long(root_series(4, false, 7)) == std::vector<long>{1, -3, -3, -12, -57, -300, -1686});
    CHECK(as_long(root_series(4, true, 7)) == std::vector<long>{1, -2, -3, -9, -36, -162, -783});
  }
}

TEST_CASE("closed forms approach the targets from within 10/k^2") {
  // The next coefficient for n = 3 is -6 (non-strict), so the gap is about
  // 6.2/k^2 at k = 50.
  for (std::uint32_t k : {50u, 100u, 200u, 400u}) {
    for (bool strict : {false, true}) {
      const double kk = k;
      CHECK(*closed_form_root(k, 3, strict) >= asymptotic_target(k, 3, strict) - 10 / (kk * kk));
      CHECK(*closed_form_root(k, 3, strict) <= asymptotic_target(k, 3, strict));
    }
  }
  CHECK(root_series(3, false, 4)[3] == -6);
}
