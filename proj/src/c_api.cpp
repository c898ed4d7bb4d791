#include "powfree/powfree.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "powfree/analyze.hpp"
#include "powfree/bounds.hpp"
#include "powfree/cache.hpp"
#include "powfree/enumerate.hpp"
#include "powfree/error.hpp"
#include "powfree/io.hpp"

struct pf_context {
  std::string last_error;
  std::vector<std::string> diagnostics;
  unsigned workers = 0;
  std::uint64_t budget = 100'000'000;
  std::string cache_path;
  bool timestamp = true;
};

struct pf_series {
  powfree::CountSeries series;
  std::vector<std::string> text;
  bool from_cache = false;
};

struct pf_certificate {
  powfree::BoundCertificate cert;
};

struct pf_audit {
  powfree::FjAudit audit;
};

namespace {

using namespace powfree;

pf_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return PF_ERR_INVALID_ARGUMENT;
    case ErrorCode::budget_exceeded: return PF_ERR_BUDGET_EXCEEDED;
    case ErrorCode::no_witness: return PF_ERR_NO_WITNESS;
    case ErrorCode::lemma_violation: return PF_ERR_LEMMA_VIOLATION;
    case ErrorCode::io: return PF_ERR_IO;
    case ErrorCode::corrupt: return PF_ERR_CORRUPT;
  }
  return PF_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the context's message.
template <typename F>
pf_status guarded(pf_context* ctx, F&& body) {
  if (!ctx) return PF_ERR_INVALID_ARGUMENT;
  ctx->last_error.clear();
  ctx->diagnostics.clear();
  try {
    body();
    return PF_OK;
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
  }
  return PF_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::invalid_argument, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Threshold to_threshold(const pf_threshold& t) {
  return Threshold(t.num, t.den, t.strict != 0);
}

OutputOptions output(const pf_context* ctx, pf_format format) {
  require(format == PF_FORMAT_JSON || format == PF_FORMAT_CSV, "unknown output format");
  return OutputOptions{format == PF_FORMAT_CSV ? Format::csv : Format::json, ctx->timestamp};
}

void fill_witness(const ViolationWitness& v, pf_witness* out) {
  if (!out) return;
  *out = pf_witness{v.start, v.period, v.length, v.exponent_num, v.exponent_den};
}

EnumerationOptions enumeration(const pf_context* ctx) {
  return EnumerationOptions{ctx->workers, ctx->budget};
}

}  // namespace

extern "C" {

const char* pf_version(void) { return "1.0.0"; }

const char* pf_status_name(pf_status status) {
  switch (status) {
    case PF_OK: return "ok";
    case PF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PF_ERR_BUDGET_EXCEEDED: return "budget exceeded";
    case PF_ERR_NO_WITNESS: return "no witness";
    case PF_ERR_LEMMA_VIOLATION: return "lemma violation";
    case PF_ERR_IO: return "i/o error";
    case PF_ERR_CORRUPT: return "corrupt data";
    case PF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void pf_string_free(char* s) { std::free(s); }

pf_context* pf_context_create(void) { return new (std::nothrow) pf_context(); }
void pf_context_destroy(pf_context* ctx) { delete ctx; }

const char* pf_context_last_error(const pf_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

size_t pf_context_diagnostic_count(const pf_context* ctx) {
  return ctx ? ctx->diagnostics.size() : 0;
}

const char* pf_context_diagnostic(const pf_context* ctx, size_t i) {
  if (!ctx || i >= ctx->diagnostics.size()) return nullptr;
  return ctx->diagnostics[i].c_str();
}

void pf_context_set_workers(pf_context* ctx, unsigned workers) {
  if (ctx) ctx->workers = workers;
}

void pf_context_set_budget(pf_context* ctx, uint64_t budget) {
  if (ctx) ctx->budget = budget;
}

pf_status pf_context_set_cache_path(pf_context* ctx, const char* path) {
  return guarded(ctx, [&] { ctx->cache_path = path ? path : ""; });
}

void pf_context_set_timestamp(pf_context* ctx, int enabled) {
  if (ctx) ctx->timestamp = enabled != 0;
}

pf_status pf_threshold_parse(pf_context* ctx, const char* text, int strict, pf_threshold* out) {
  return guarded(ctx, [&] {
    require(text && out, "null argument");
    const Threshold t = parse_threshold(text, strict != 0);
    *out = pf_threshold{t.num(), t.den(), t.strict() ? 1 : 0};
  });
}

pf_status pf_find_violation(pf_context* ctx, const uint16_t* letters, size_t length, uint32_t k,
                            pf_threshold threshold, int* violated, pf_witness* witness) {
  return guarded(ctx, [&] {
    require(violated && (letters || length == 0), "null argument");
    const Word w(std::vector<Letter>(letters, letters + length), k);
    const auto v = find_violation(w, to_threshold(threshold));
    *violated = v ? 1 : 0;
    if (v) fill_witness(*v, witness);
  });
}

pf_status pf_check_text(pf_context* ctx, const char* word, pf_threshold threshold,
                        pf_format format, int* violated, pf_witness* witness, char** report) {
  return guarded(ctx, [&] {
    require(word && violated, "null argument");
    const Word w = parse_word(word);
    const Threshold t = to_threshold(threshold);
    const auto v = find_violation(w, t);
    const auto opts = output(ctx, format);
    *violated = v ? 1 : 0;
    if (v) fill_witness(*v, witness);
    if (report) *report = duplicate(format_check(w, t, v, opts));
  });
}

pf_status pf_count(pf_context* ctx, const pf_count_request* request, pf_series** out) {
  return guarded(ctx, [&] {
    require(request && out, "null argument");
    *out = nullptr;
    require(request->k >= 1, "k must be positive");
    const Threshold t = to_threshold(request->threshold);
    const TailLimit tail = request->tail_max < 0
                               ? TailLimit{}
                               : TailLimit{static_cast<std::uint64_t>(request->tail_max)};
    Method method;
    switch (request->method) {
      case PF_METHOD_AUTO: method = default_method(request->k); break;
      case PF_METHOD_NAIVE: method = Method::naive; break;
      case PF_METHOD_INCREMENTAL: method = Method::incremental; break;
      case PF_METHOD_CANONICAL: method = Method::canonical; break;
      default: fail(ErrorCode::invalid_argument, "unknown counting method");
    }

    auto result = std::make_unique<pf_series>();
    std::optional<CountCache> cache;
    if (!ctx->cache_path.empty()) cache.emplace(ctx->cache_path);
    if (cache) {
      auto hit = cache->get(request->k, t, tail);
      ctx->diagnostics = cache->diagnostics();
      if (hit && hit->max_length() >= request->max_length) {
        hit->counts.resize(request->max_length + 1);
        result->series = std::move(*hit);
        result->from_cache = true;
      }
    }
    if (!result->from_cache) {
      result->series = tail ? count_tail_restricted(request->k, t, *tail, request->max_length,
                                                    method, enumeration(ctx))
                            : count_free(request->k, t, request->max_length, method,
                                         enumeration(ctx));
      if (cache) {
        cache->put(result->series);
        ctx->diagnostics = cache->diagnostics();
      }
    }
    for (const auto& c : result->series.counts) result->text.push_back(c.get_str());
    *out = result.release();
  });
}

void pf_series_destroy(pf_series* series) { delete series; }

size_t pf_series_size(const pf_series* series) { return series ? series->text.size() : 0; }

const char* pf_series_count(const pf_series* series, size_t i) {
  if (!series || i >= series->text.size()) return nullptr;
  return series->text[i].c_str();
}

pf_method pf_series_method(const pf_series* series) {
  if (!series) return PF_METHOD_AUTO;
  switch (series->series.method) {
    case Method::naive: return PF_METHOD_NAIVE;
    case Method::incremental: return PF_METHOD_INCREMENTAL;
    case Method::canonical: return PF_METHOD_CANONICAL;
  }
  return PF_METHOD_AUTO;
}

int pf_series_from_cache(const pf_series* series) { return series && series->from_cache; }

pf_status pf_series_format(pf_context* ctx, const pf_series* series, pf_format format,
                           char** out) {
  return guarded(ctx, [&] {
    require(series && out, "null argument");
    *out = duplicate(format_series(series->series, output(ctx, format)));
  });
}

pf_status pf_certify(pf_context* ctx, uint32_t k, uint32_t n, int strict, size_t max_length,
                     pf_certificate** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    require(n >= 2, "n must be at least 2");
    require(k >= 1, "k must be positive");
    const bool plus = strict != 0;
    if (!rational_witness(k, n, plus)) {
      fail(ErrorCode::no_witness,
           "no x > 1 satisfies the growth condition for k=" + std::to_string(k) +
               ", n=" + std::to_string(n) + (plus ? " (plus)" : ""));
    }
    const CountSeries series =
        count_free(k, Threshold::dejean(n, plus), max_length, Method::canonical, enumeration(ctx));
    *out = new pf_certificate{certify(k, n, plus, series)};
  });
}

void pf_certificate_destroy(pf_certificate* cert) { delete cert; }

double pf_certificate_witness(const pf_certificate* cert) {
  return cert ? cert->cert.x_witness.get_d() : 0.0;
}

size_t pf_certificate_verified_up_to(const pf_certificate* cert) {
  return cert ? cert->cert.verified_up_to : 0;
}

pf_status pf_certificate_format(pf_context* ctx, const pf_certificate* cert, pf_format format,
                                char** out) {
  return guarded(ctx, [&] {
    require(cert && out, "null argument");
    *out = duplicate(format_certificate(cert->cert, output(ctx, format)));
  });
}

pf_status pf_audit_run(pf_context* ctx, uint32_t k, uint32_t n, int strict, size_t i,
                       pf_audit** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    *out = new pf_audit{fj_audit(k, n, strict != 0, i, AuditOptions{ctx->workers, ctx->budget})};
  });
}

void pf_audit_destroy(pf_audit* audit) { delete audit; }
int pf_audit_all_pass(const pf_audit* audit) { return audit && audit->audit.all_pass(); }
int pf_audit_suffix_determined(const pf_audit* audit) {
  return audit && audit->audit.suffix_determined;
}
size_t pf_audit_row_count(const pf_audit* audit) { return audit ? audit->audit.rows.size() : 0; }

pf_status pf_audit_format(pf_context* ctx, const pf_audit* audit, pf_format format, char** out) {
  return guarded(ctx, [&] {
    require(audit && out, "null argument");
    *out = duplicate(format_audit(audit->audit, output(ctx, format)));
  });
}

pf_status pf_report(pf_context* ctx, const pf_report_request* request, pf_format format,
                    char** out) {
  return guarded(ctx, [&] {
    require(request && out && (request->ks || request->k_count == 0), "null argument");
    ReportRequest req;
    req.n_min = request->n_min;
    req.n_max = request->n_max;
    req.ks.assign(request->ks, request->ks + request->k_count);
    req.max_length = request->max_length;
    req.tail_max = request->tail_max;
    req.enumeration = enumeration(ctx);
    const auto opts = output(ctx, format);
    *out = duplicate(format_report(conjecture_report(req), opts));
  });
}

pf_status pf_cache_list(pf_context* ctx, pf_format format, char** out, size_t* skipped) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null argument");
    require(!ctx->cache_path.empty(), "no cache path configured");
    CountCache cache(ctx->cache_path);
    const auto entries = cache.entries();
    ctx->diagnostics = cache.diagnostics();
    if (skipped) *skipped = cache.diagnostics().size();
    *out = duplicate(format_cache(entries, output(ctx, format)));
  });
}

}  // extern "C"
