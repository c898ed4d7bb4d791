// powfree command-line tool. Talks to the library only through powfree.h.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "powfree/powfree.h"

namespace {

enum Exit : int {
  exit_ok = 0,
  exit_violated = 1,
  exit_usage = 2,
  exit_budget = 3,
  exit_no_witness = 4,
  exit_lemma = 5,
  exit_io = 6,
  exit_internal = 7,
};

int exit_for(pf_status s) {
  switch (s) {
    case PF_OK: return exit_ok;
    case PF_ERR_INVALID_ARGUMENT: return exit_usage;
    case PF_ERR_BUDGET_EXCEEDED: return exit_budget;
    case PF_ERR_NO_WITNESS: return exit_no_witness;
    case PF_ERR_LEMMA_VIOLATION: return exit_lemma;
    case PF_ERR_IO:
    case PF_ERR_CORRUPT: return exit_io;
    case PF_ERR_INTERNAL: return exit_internal;
  }
  return exit_internal;
}

struct ContextDeleter {
  void operator()(pf_context* c) const { pf_context_destroy(c); }
};
using Context = std::unique_ptr<pf_context, ContextDeleter>;

struct StringDeleter {
  void operator()(char* s) const { pf_string_free(s); }
};
using Text = std::unique_ptr<char, StringDeleter>;

struct Globals {
  std::string out = "json";
  std::string cache;
  unsigned workers = 0;
  std::uint64_t budget = 100'000'000;
  bool no_timestamp = false;
};

struct Failure {
  int code;
};

class Runner {
 public:
  explicit Runner(const Globals& g) : globals_(g), ctx_(pf_context_create()) {
    if (!ctx_) throw Failure{exit_internal};
    pf_context_set_workers(ctx_.get(), g.workers);
    pf_context_set_budget(ctx_.get(), g.budget);
    pf_context_set_timestamp(ctx_.get(), g.no_timestamp ? 0 : 1);
  }

  pf_context* get() const { return ctx_.get(); }

  pf_format format() const { return globals_.out == "csv" ? PF_FORMAT_CSV : PF_FORMAT_JSON; }

  void use_cache(const std::string& path) { check(pf_context_set_cache_path(get(), path.c_str())); }

  // Reports warnings, then turns a failed status into an exit.
  void check(pf_status s) const {
    for (size_t i = 0; i < pf_context_diagnostic_count(get()); ++i)
      std::cerr << "powfree: warning: " << pf_context_diagnostic(get(), i) << "\n";
    if (s == PF_OK) return;
    std::cerr << "powfree: " << pf_status_name(s) << ": " << pf_context_last_error(get()) << "\n";
    throw Failure{exit_for(s)};
  }

  pf_threshold threshold(const std::string& beta, bool plus) const {
    pf_threshold t{};
    check(pf_threshold_parse(get(), beta.c_str(), plus ? 1 : 0, &t));
    return t;
  }

 private:
  const Globals& globals_;
  Context ctx_;
};

void emit(char* raw) {
  Text text(raw);
  std::fputs(text.get(), stdout);
}

std::string resolve_cache(const Globals& g, bool with_default) {
  if (!g.cache.empty()) return g.cache;
  if (const char* env = std::getenv("POWFREE_CACHE"); env && *env) return env;
  if (!with_default) return {};
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::string(xdg) + "/powfree/counts.jsonl";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::string(home) + "/.cache/powfree/counts.jsonl";
  return "powfree-counts.jsonl";
}

// "2..4" or "3".
std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = static_cast<std::uint32_t>(std::stoul(text));
      return {v, v};
    }
    return {static_cast<std::uint32_t>(std::stoul(text.substr(0, dots))),
            static_cast<std::uint32_t>(std::stoul(text.substr(dots + 2)))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--n", "expected N or A..B, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counting, detection and growth certificates for power-free words"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(pf_version()));

  Globals g;
  app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache", g.cache, "Count cache file (overrides POWFREE_CACHE)");
  app.add_option("--workers", g.workers, "Worker threads, 0 for all cores");
  app.add_option("--budget", g.budget, "Largest k^L for exhaustive engines and audits");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit generated_at from JSON output");

  std::string word, beta = "2";
  bool plus = false;
  auto* check = app.add_subcommand("check", "Test one word for forbidden powers");
  check->add_option("word", word, "Letters a..z, or comma-separated integers")->required();
  check->add_option("--beta", beta, "Threshold p/q")->required();
  check->add_flag("--plus", plus, "Forbid only exponents strictly above beta");

  std::uint32_t k = 0, n = 0;
  std::size_t max_len = 0, audit_len = 0;
  std::string engine = "auto";
  std::int64_t tail_max = -1;
  auto* count = app.add_subcommand("count", "Count free words of each length");
  count->add_option("--k", k, "Alphabet size")->required()->check(CLI::PositiveNumber);
  count->add_option("--beta", beta, "Threshold p/q")->required();
  count->add_flag("--plus", plus, "Forbid only exponents strictly above beta");
  count->add_option("--max-len", max_len, "Largest length counted")->required();
  count->add_option("--engine", engine, "Counting engine")
      ->check(CLI::IsMember({"auto", "naive", "incremental", "canonical"}));
  count->add_option("--tail-max", tail_max, "Only forbid powers with tails up to this length")
      ->check(CLI::PositiveNumber);

  std::size_t cert_len = 10;
  auto* certify = app.add_subcommand("certify", "Certify a growth lower bound for n/(n-1)");
  certify->add_option("--k", k, "Alphabet size")->required()->check(CLI::PositiveNumber);
  certify->add_option("--n", n, "Threshold n/(n-1)")->required()->check(CLI::Range(2u, 1000000u));
  certify->add_flag("--plus", plus, "Use the n/(n-1)+ threshold");
  certify->add_option("--max-len", cert_len, "Length of the checked count series");

  auto* audit = app.add_subcommand("audit", "Exhaustive F_j audit of the counting step");
  audit->add_option("--k", k, "Alphabet size")->required()->check(CLI::PositiveNumber);
  audit->add_option("--n", n, "Threshold n/(n-1)")->required()->check(CLI::Range(2u, 1000000u));
  audit->add_flag("--plus", plus, "Use the n/(n-1)+ threshold");
  audit->add_option("--len", audit_len, "Prefix length i")->required();

  std::string n_range = "3";
  std::vector<std::uint32_t> ks;
  std::size_t report_len = 0;
  std::uint64_t report_tail = 2;
  auto* report = app.add_subcommand("report", "Tabulate closed forms, targets and certified bounds");
  report->add_option("--n", n_range, "N or A..B");
  report->add_option("--k", ks, "Alphabet sizes")->required()->delimiter(',');
  report->add_option("--max-len", report_len, "Count length for certified and ratio columns");
  report->add_option("--tail-max", report_tail, "Tail bound of the restricted language")
      ->check(CLI::PositiveNumber);

  auto* cache = app.add_subcommand("cache", "Inspect the count cache");
  cache->add_subcommand("list", "List cached series");
  cache->add_subcommand("path", "Print the resolved cache path");
  cache->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    Runner run(g);

    if (*check) {
      int violated = 0;
      pf_witness witness{};
      char* text = nullptr;
      run.check(pf_check_text(run.get(), word.c_str(), run.threshold(beta, plus), run.format(),
                              &violated, &witness, &text));
      emit(text);
      return violated ? exit_violated : exit_ok;
    }

    if (*count) {
      if (const auto path = resolve_cache(g, false); !path.empty()) run.use_cache(path);
      pf_count_request req{};
      req.k = k;
      req.threshold = run.threshold(beta, plus);
      req.max_length = max_len;
      req.method = engine == "naive"         ? PF_METHOD_NAIVE
                   : engine == "incremental" ? PF_METHOD_INCREMENTAL
                   : engine == "canonical"   ? PF_METHOD_CANONICAL
                                             : PF_METHOD_AUTO;
      req.tail_max = tail_max;
      pf_series* series = nullptr;
      run.check(pf_count(run.get(), &req, &series));
      std::unique_ptr<pf_series, decltype(&pf_series_destroy)> owned(series, pf_series_destroy);
      char* text = nullptr;
      run.check(pf_series_format(run.get(), series, run.format(), &text));
      emit(text);
      return exit_ok;
    }

    if (*certify) {
      if (k <= n) {
        std::cerr << "powfree: usage error: certify requires k > n; no witness exists for k="
                  << k << ", n=" << n << "\n";
        return exit_usage;
      }
      pf_certificate* cert = nullptr;
      run.check(pf_certify(run.get(), k, n, plus ? 1 : 0, cert_len, &cert));
      std::unique_ptr<pf_certificate, decltype(&pf_certificate_destroy)> owned(
          cert, pf_certificate_destroy);
      char* text = nullptr;
      run.check(pf_certificate_format(run.get(), cert, run.format(), &text));
      emit(text);
      return exit_ok;
    }

    if (*audit) {
      pf_audit* result = nullptr;
      run.check(pf_audit_run(run.get(), k, n, plus ? 1 : 0, audit_len, &result));
      std::unique_ptr<pf_audit, decltype(&pf_audit_destroy)> owned(result, pf_audit_destroy);
      char* text = nullptr;
      run.check(pf_audit_format(run.get(), result, run.format(), &text));
      emit(text);
      return pf_audit_all_pass(result) ? exit_ok : exit_violated;
    }

    if (*report) {
      const auto [lo, hi] = parse_range(n_range);
      pf_report_request req{lo, hi, ks.data(), ks.size(), report_len, report_tail};
      char* text = nullptr;
      run.check(pf_report(run.get(), &req, run.format(), &text));
      emit(text);
      return exit_ok;
    }

    if (*cache) {
      const std::string path = resolve_cache(g, true);
      if (cache->got_subcommand("path")) {
        std::cout << path << "\n";
        return exit_ok;
      }
      run.use_cache(path);
      char* text = nullptr;
      size_t skipped = 0;
      run.check(pf_cache_list(run.get(), run.format(), &text, &skipped));
      emit(text);
      return exit_ok;
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "powfree: usage error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
