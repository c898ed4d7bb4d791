#include "powfree/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "powfree/error.hpp"

namespace powfree {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::naive: return "naive";
    case Method::incremental: return "incremental";
    case Method::canonical: return "canonical";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "naive") return Method::naive;
  if (name == "incremental") return Method::incremental;
  if (name == "canonical") return Method::canonical;
  return std::nullopt;
}

Method default_method(std::uint32_t k) noexcept {
  return k > 6 ? Method::canonical : Method::incremental;
}

mpz_class falling_factorial(std::uint32_t k, std::uint32_t d) {
  mpz_class r = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (i >= k) return 0;
    r *= k - i;
  }
  return r;
}

namespace {

// Node counts per (length, distinct letters). The incremental engine only
// uses the distinct = 0 column.
class Tally {
 public:
  explicit Tally(std::size_t max_length)
      : width_(max_length + 1), cells_(width_ * width_, 0) {}

  void add(std::size_t length, std::size_t distinct) noexcept {
    ++cells_[length * width_ + distinct];
  }

  void merge(const Tally& other) noexcept {
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
  }

  std::uint64_t at(std::size_t length, std::size_t distinct) const noexcept {
    return cells_[length * width_ + distinct];
  }

  std::size_t width() const noexcept { return width_; }

 private:
  std::size_t width_;
  std::vector<std::uint64_t> cells_;
};

struct Node {
  std::vector<Letter> prefix;
  std::size_t distinct;
};

class DepthFirst {
 public:
  DepthFirst(std::uint32_t k, const ExtensionChecker& checker,
             std::size_t max_length, bool canonical)
      : k_(k), checker_(checker), max_length_(max_length), canonical_(canonical) {}

  // Number of letters worth trying after a prefix with `distinct` letters.
  std::uint32_t branching(std::size_t distinct) const noexcept {
    if (!canonical_) return k_;
    return static_cast<std::uint32_t>(std::min<std::size_t>(distinct + 1, k_));
  }

  std::size_t after(std::size_t distinct, std::uint32_t letter) const noexcept {
    if (!canonical_) return 0;
    return letter > distinct ? distinct + 1 : distinct;
  }

  void run(const Node& start, Tally& tally) const {
    std::vector<Letter> buffer(max_length_ + 1);
    std::copy(start.prefix.begin(), start.prefix.end(), buffer.begin());
    descend(buffer, start.prefix.size(), start.distinct, tally);
  }

  // Children of `node` that stay free.
  std::vector<Node> expand(const Node& node) const {
    std::vector<Node> out;
    std::vector<Letter> w = node.prefix;
    w.push_back(0);
    const std::uint32_t top = branching(node.distinct);
    for (std::uint32_t a = 1; a <= top; ++a) {
      w.back() = static_cast<Letter>(a);
      if (checker_.extension_ok(w)) out.push_back({w, after(node.distinct, a)});
    }
    return out;
  }

 private:
  void descend(std::vector<Letter>& buffer, std::size_t length,
               std::size_t distinct, Tally& tally) const {
    tally.add(length, distinct);
    if (length == max_length_) return;
    const std::uint32_t top = branching(distinct);
    for (std::uint32_t a = 1; a <= top; ++a) {
      buffer[length] = static_cast<Letter>(a);
      if (!checker_.extension_ok(std::span<const Letter>(buffer.data(), length + 1)))
        continue;
      descend(buffer, length + 1, after(distinct, a), tally);
    }
  }

  std::uint32_t k_;
  const ExtensionChecker& checker_;
  std::size_t max_length_;
  bool canonical_;
};

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Breadth-first expansion until there are enough independent subtrees, then
// each worker pulls subtrees off a shared index. Partial tallies are summed,
// so the result does not depend on scheduling.
Tally depth_first_tally(const DepthFirst& dfs, std::size_t max_length,
                        unsigned workers) {
  Tally total(max_length);
  std::vector<Node> frontier{Node{{}, 0}};
  if (workers > 1) {
    const std::size_t target = std::size_t{8} * workers;
    while (!frontier.empty() && frontier.front().prefix.size() < max_length &&
           frontier.size() < target) {
      std::vector<Node> next;
      for (const Node& node : frontier) {
        total.add(node.prefix.size(), node.distinct);
        auto children = dfs.expand(node);
        std::move(children.begin(), children.end(), std::back_inserter(next));
      }
      frontier = std::move(next);
    }
  }

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(workers, frontier.size()));
  if (threads <= 1) {
    for (const Node& node : frontier) dfs.run(node, total);
    return total;
  }

  std::vector<Tally> partial(threads, Tally(max_length));
  std::atomic<std::size_t> next_job{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t job = next_job++; job < frontier.size(); job = next_job++)
          dfs.run(frontier[job], partial[t]);
      });
    }
  }
  for (const Tally& p : partial) total.merge(p);
  return total;
}

void check_naive_budget(std::uint32_t k, std::size_t max_length,
                        std::uint64_t budget) {
  mpz_class words;
  mpz_ui_pow_ui(words.get_mpz_t(), k, max_length);
  if (words > mpz_class(static_cast<unsigned long>(budget))) {
    fail(ErrorCode::budget_exceeded,
         "naive engine would examine k^L = " + std::to_string(k) + "^" +
             std::to_string(max_length) + " = " + words.get_str() +
             " words, above the budget of " + std::to_string(budget) +
             "; lower --max-len or use the incremental or canonical engine");
  }
}

std::vector<mpz_class> count_naive(std::uint32_t k, const Threshold& t,
                                   const TailLimit& tail_max,
                                   std::size_t max_length) {
  std::vector<mpz_class> counts(max_length + 1);
  for (std::size_t length = 0; length <= max_length; ++length) {
    std::vector<Letter> w(length, 1);
    std::uint64_t free_words = 0;
    while (true) {
      if (is_free(w, t, tail_max)) ++free_words;
      std::size_t pos = length;
      while (pos > 0 && w[pos - 1] == k) w[--pos] = 1;
      if (pos == 0) break;
      ++w[pos - 1];
    }
    counts[length] = mpz_class(static_cast<unsigned long>(free_words));
  }
  return counts;
}

CountSeries count_series(std::uint32_t k, const Threshold& t,
                         const TailLimit& tail_max, std::size_t max_length,
                         Method method, const EnumerationOptions& options) {
  if (k == 0) fail(ErrorCode::invalid_argument, "alphabet size must be positive");
  if (k > 65535) fail(ErrorCode::invalid_argument, "alphabet size above 65535");

  CountSeries series;
  series.k = k;
  series.threshold = t;
  series.tail_max = tail_max;
  series.method = method;

  if (method == Method::naive) {
    check_naive_budget(k, max_length, options.naive_budget);
    series.counts = count_naive(k, t, tail_max, max_length);
    return series;
  }

  const ExtensionChecker checker(t, max_length, tail_max);
  const bool canonical = method == Method::canonical;
  const DepthFirst dfs(k, checker, max_length, canonical);
  const Tally tally =
      depth_first_tally(dfs, max_length, resolve_workers(options.workers));

  series.counts.assign(max_length + 1, 0);
  for (std::size_t length = 0; length <= max_length; ++length) {
    if (!canonical) {
      series.counts[length] = mpz_class(static_cast<unsigned long>(tally.at(length, 0)));
      continue;
    }
    for (std::size_t d = 0; d < tally.width(); ++d) {
      const std::uint64_t patterns = tally.at(length, d);
      if (patterns == 0) continue;
      series.counts[length] += mpz_class(static_cast<unsigned long>(patterns)) *
                               falling_factorial(k, static_cast<std::uint32_t>(d));
    }
  }
  return series;
}

}  // namespace

CountSeries count_free(std::uint32_t k, const Threshold& t,
                       std::size_t max_length, Method method,
                       const EnumerationOptions& options) {
  return count_series(k, t, std::nullopt, max_length, method, options);
}

CountSeries count_tail_restricted(std::uint32_t k, const Threshold& t,
                                  std::uint64_t tail_max,
                                  std::size_t max_length, Method method,
                                  const EnumerationOptions& options) {
  if (tail_max == 0) fail(ErrorCode::invalid_argument, "tail_max must be positive");
  return count_series(k, t, tail_max, max_length, method, options);
}

}  // namespace powfree
