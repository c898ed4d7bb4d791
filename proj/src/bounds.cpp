#include "powfree/bounds.hpp"

#include <cmath>
#include <cstdio>

#include "powfree/error.hpp"

namespace powfree {

namespace {

// The condition, multiplied through by x - 1 > 0, reads x^2 - b x + c <= 0.
struct Quadratic {
  std::int64_t b;
  std::int64_t c;
  std::int64_t discriminant() const { return b * b - 4 * c; }
};

Quadratic quadratic(std::uint32_t k, std::uint32_t n, bool strict) {
  if (n < 2) fail(ErrorCode::invalid_argument, "n must be at least 2");
  if (k < 1) fail(ErrorCode::invalid_argument, "k must be positive");
  const std::int64_t kk = k;
  const std::int64_t nn = n;
  return strict ? Quadratic{kk - nn + 3, kk + 1} : Quadratic{kk - nn + 2, kk};
}

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

mpq_class condition_margin(std::uint32_t k, std::uint32_t n, bool strict,
                           const mpq_class& x) {
  if (x <= 1) fail(ErrorCode::invalid_argument, "condition requires x > 1");
  mpq_class margin = mpq_class(k) + (strict ? 1 : 0) - mpq_class(n - 1) * x / (x - 1) - x;
  margin.canonicalize();
  return margin;
}

double condition_margin(std::uint32_t k, std::uint32_t n, bool strict, double x) {
  return static_cast<double>(k) + (strict ? 1.0 : 0.0) -
         static_cast<double>(n - 1) * x / (x - 1.0) - x;
}

std::optional<double> closed_form_root(std::uint32_t k, std::uint32_t n,
                                       bool strict) {
  const Quadratic q = quadratic(k, n, strict);
  const std::int64_t d = q.discriminant();
  if (d < 0) return std::nullopt;
  const long double root =
      (static_cast<long double>(q.b) + std::sqrt(static_cast<long double>(d))) / 2;
  if (root <= 1) return std::nullopt;
  return static_cast<double>(root);
}

std::optional<mpq_class> rational_witness(std::uint32_t k, std::uint32_t n,
                                          bool strict, unsigned precision_bits) {
  const Quadratic q = quadratic(k, n, strict);
  const std::int64_t d = q.discriminant();
  if (d < 0) return std::nullopt;

  // floor(root * 2^m) = floor((b * 2^m + isqrt(d * 4^m)) / 2).
  const unsigned m = precision_bits + 1;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, m);
  mpz_class scaled_disc = to_mpz(d) * scale * scale;
  mpz_class root_disc;
  mpz_sqrt(root_disc.get_mpz_t(), scaled_disc.get_mpz_t());
  mpz_class numer = to_mpz(q.b) * scale + root_disc;
  mpz_fdiv_q_2exp(numer.get_mpz_t(), numer.get_mpz_t(), 1);

  mpq_class x(numer, scale);
  x.canonicalize();
  if (x <= 1) return std::nullopt;
  if (condition_margin(k, n, strict, x) < 0) return std::nullopt;
  return x;
}

BoundCertificate certify(std::uint32_t k, std::uint32_t n, bool strict,
                         const CountSeries& series, unsigned precision_bits) {
  const Threshold expected = Threshold::dejean(n, strict);
  if (series.k != k || series.threshold != expected || series.tail_max) {
    fail(ErrorCode::invalid_argument,
         "series does not count " + expected.to_string() + "-free words over " +
             std::to_string(k) + " letters");
  }
  if (k <= n) {
    fail(ErrorCode::no_witness,
         "the condition has no solution x > 1 when k <= n (k=" +
             std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  const auto witness = rational_witness(k, n, strict, precision_bits);
  if (!witness) {
    fail(ErrorCode::no_witness, "no x > 1 satisfies the condition for k=" +
                                    std::to_string(k) + ", n=" + std::to_string(n) +
                                    (strict ? " (strict)" : ""));
  }

  BoundCertificate cert;
  cert.k = k;
  cert.n = n;
  cert.strict = strict;
  cert.x_witness = *witness;
  cert.condition_margin = condition_margin(k, n, strict, *witness);
  cert.series_digest = series_digest(series);

  const auto& c = series.counts;
  const mpz_class& num = cert.x_witness.get_num();
  const mpz_class& den = cert.x_witness.get_den();
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (c[i + 1] * den < num * c[i]) {
      fail(ErrorCode::lemma_violation,
           "lemma violation at i=" + std::to_string(i) + ": C_" +
               std::to_string(i + 1) + " = " + c[i + 1].get_str() + " < x * C_" +
               std::to_string(i) + " with x = " + cert.x_witness.get_str() +
               ", C_" + std::to_string(i) + " = " + c[i].get_str());
    }
    cert.verified_up_to = i;
  }
  return cert;
}

double asymptotic_target(std::uint32_t k, std::uint32_t n, bool strict) {
  return static_cast<double>(k) + (strict ? 2.0 : 1.0) - static_cast<double>(n) -
         static_cast<double>(n - 1) / static_cast<double>(k);
}

std::vector<mpq_class> root_series(std::uint32_t n, bool strict, std::size_t terms) {
  if (n < 2) fail(ErrorCode::invalid_argument, "n must be at least 2");
  // root(k) / k = (1 + a y + sqrt(1 + p1 y + p2 y^2)) / 2 with y = 1/k.
  const long nn = n;
  const mpq_class a = strict ? 3 - nn : 2 - nn;
  const std::array<mpq_class, 3> radicand =
      strict ? std::array<mpq_class, 3>{1, 2 - 2 * nn, nn * nn - 6 * nn + 5}
             : std::array<mpq_class, 3>{1, -2 * nn, (nn - 2) * (nn - 2)};

  // sqrt of a power series with constant term 1: s_m = (p_m - sum s_i s_{m-i}) / 2.
  std::vector<mpq_class> s(terms, 0);
  for (std::size_t m = 0; m < terms; ++m) {
    if (m == 0) {
      s[0] = 1;
      continue;
    }
    mpq_class acc = m < radicand.size() ? radicand[m] : mpq_class(0);
    for (std::size_t i = 1; i < m; ++i) acc -= s[i] * s[m - i];
    s[m] = acc / 2;
  }

  std::vector<mpq_class> f(terms);
  for (std::size_t m = 0; m < terms; ++m) {
    mpq_class linear = m == 0 ? mpq_class(1) : m == 1 ? a : mpq_class(0);
    f[m] = (linear + s[m]) / 2;
    f[m].canonicalize();
  }
  return f;
}

std::array<mpq_class, 3> taylor_coefficients(std::uint32_t n) {
  const auto f = root_series(n, false, 3);
  return {f[0], f[1], f[2]};
}

std::string series_digest(const CountSeries& series) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    h ^= '|';
    h *= 0x100000001b3ULL;
  };
  mix(std::to_string(series.k));
  mix(series.threshold.to_string());
  mix(series.tail_max ? std::to_string(*series.tail_max) : "none");
  for (const auto& c : series.counts) mix(c.get_str());
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace powfree
