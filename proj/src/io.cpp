#include "powfree/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "powfree/error.hpp"

namespace powfree {

using nlohmann::ordered_json;

namespace {

std::uint64_t parse_positive(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || v == 0) {
    fail(ErrorCode::invalid_argument,
         "malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

std::string timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string real_text(const std::optional<double>& v) {
  return v ? real_text(*v) : std::string();
}

ordered_json real_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json rational_json(const mpq_class& q) {
  return ordered_json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

mpq_class rational_from_json(const nlohmann::json& doc) {
  mpq_class q(mpz_class(doc.at("num").get<std::string>()),
              mpz_class(doc.at("den").get<std::string>()));
  q.canonicalize();
  return q;
}

std::string finish(ordered_json doc, const OutputOptions& out) {
  if (out.timestamp) doc["generated_at"] = timestamp_now();
  return doc.dump(2) + "\n";
}

bool is_decimal(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos &&
         (s.size() == 1 || s[0] != '0');
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

Threshold parse_threshold(std::string_view text, bool strict) {
  if (!text.empty() && text.back() == '+') {
    strict = true;
    text.remove_suffix(1);
  }
  const auto slash = text.find('/');
  const std::uint64_t num = parse_positive(text.substr(0, slash), "threshold numerator");
  const std::uint64_t den =
      slash == std::string_view::npos ? 1 : parse_positive(text.substr(slash + 1), "threshold denominator");
  return Threshold(num, den, strict);
}

Word parse_word(std::string_view text) {
  std::vector<Letter> letters;
  const bool numeric = !text.empty() && text.find_first_not_of("0123456789,") == std::string_view::npos;
  if (!numeric) {
    for (char ch : text) {
      if (ch < 'a' || ch > 'z')
        fail(ErrorCode::invalid_argument,
             "word letters must be a..z or comma-separated integers, got '" + std::string(text) + "'");
      letters.push_back(static_cast<Letter>(ch - 'a' + 1));
    }
    return Word(std::move(letters), 26);
  }
  std::uint32_t k = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto v = parse_positive(text.substr(pos, comma - pos), "letter");
    if (v > 65535) fail(ErrorCode::invalid_argument, "letter above 65535");
    letters.push_back(static_cast<Letter>(v));
    k = std::max<std::uint32_t>(k, static_cast<std::uint32_t>(v));
    pos = comma + 1;
  }
  return Word(std::move(letters), k);
}

std::string word_text(const Word& w) {
  std::string s;
  if (w.alphabet_size() <= 26) {
    for (Letter l : w.letters()) s += static_cast<char>('a' + l - 1);
    return s;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w.letters()[i]);
  }
  return s;
}

std::string rational_text(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ordered_json series_to_json(const CountSeries& series) {
  ordered_json counts = ordered_json::array();
  for (const auto& c : series.counts) counts.push_back(c.get_str());
  return ordered_json{
      {"k", series.k},
      {"num", series.threshold.num()},
      {"den", series.threshold.den()},
      {"strict", series.threshold.strict()},
      {"tail_max", series.tail_max ? ordered_json(*series.tail_max) : ordered_json(nullptr)},
      {"method", std::string(method_name(series.method))},
      {"counts", std::move(counts)},
  };
}

CountSeries series_from_json(const nlohmann::json& doc) {
  try {
    CountSeries s;
    const auto k = doc.at("k").get<std::int64_t>();
    if (k < 1 || k > 65535) fail(ErrorCode::corrupt, "k out of range");
    s.k = static_cast<std::uint32_t>(k);
    s.threshold = Threshold(doc.at("num").get<std::uint64_t>(), doc.at("den").get<std::uint64_t>(),
                            doc.at("strict").get<bool>());
    if (!doc.at("tail_max").is_null()) {
      const auto tail = doc.at("tail_max").get<std::int64_t>();
      if (tail < 1) fail(ErrorCode::corrupt, "tail_max must be positive");
      s.tail_max = static_cast<std::uint64_t>(tail);
    }
    const auto method = parse_method(doc.at("method").get<std::string>());
    if (!method) fail(ErrorCode::corrupt, "unknown method");
    s.method = *method;
    for (const auto& c : doc.at("counts")) {
      const auto text = c.get<std::string>();
      if (!is_decimal(text)) fail(ErrorCode::corrupt, "count '" + text + "' is not a decimal natural");
      s.counts.emplace_back(text);
    }
    if (s.counts.empty() || s.counts[0] != 1) fail(ErrorCode::corrupt, "counts must start with C_0 = 1");
    return s;
  } catch (const Error& e) {
    throw Error(ErrorCode::corrupt, std::string("invalid count series: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::corrupt, std::string("invalid count series: ") + e.what());
  }
}

ordered_json certificate_to_json(const BoundCertificate& cert) {
  return ordered_json{
      {"k", cert.k},
      {"n", cert.n},
      {"strict", cert.strict},
      {"threshold", Threshold::dejean(cert.n, cert.strict).to_string()},
      {"x_witness", rational_json(cert.x_witness)},
      {"x_witness_approx", cert.x_witness.get_d()},
      {"condition_margin", rational_json(cert.condition_margin)},
      {"verified_up_to", cert.verified_up_to},
      {"series_digest", cert.series_digest},
  };
}

BoundCertificate certificate_from_json(const nlohmann::json& doc) {
  try {
    BoundCertificate cert;
    cert.k = doc.at("k").get<std::uint32_t>();
    cert.n = doc.at("n").get<std::uint32_t>();
    cert.strict = doc.at("strict").get<bool>();
    cert.x_witness = rational_from_json(doc.at("x_witness"));
    cert.condition_margin = rational_from_json(doc.at("condition_margin"));
    cert.verified_up_to = doc.at("verified_up_to").get<std::size_t>();
    cert.series_digest = doc.at("series_digest").get<std::string>();
    return cert;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::corrupt, std::string("invalid certificate: ") + e.what());
  }
}

std::string format_check(const Word& w, const Threshold& t,
                         const std::optional<ViolationWitness>& witness,
                         const OutputOptions& out) {
  if (out.format == Format::csv) {
    std::ostringstream os;
    os << "word,threshold,free,start,period,length,exponent\n"
       << word_text(w) << ',' << t.to_string() << ',' << (witness ? "false" : "true");
    if (witness) {
      os << ',' << witness->start << ',' << witness->period << ',' << witness->length << ','
         << witness->exponent_num << '/' << witness->exponent_den;
    } else {
      os << ",,,,";
    }
    os << '\n';
    return os.str();
  }
  ordered_json doc{{"word", word_text(w)}, {"threshold", t.to_string()}, {"free", !witness}};
  if (witness) {
    doc["witness"] = ordered_json{
        {"start", witness->start},
        {"period", witness->period},
        {"length", witness->length},
        {"exponent", std::to_string(witness->exponent_num) + "/" + std::to_string(witness->exponent_den)},
    };
  } else {
    doc["witness"] = nullptr;
  }
  return finish(std::move(doc), out);
}

std::string format_series(const CountSeries& series, const OutputOptions& out) {
  if (out.format == Format::csv) {
    std::string s = "i,count\n";
    for (std::size_t i = 0; i < series.counts.size(); ++i)
      s += std::to_string(i) + "," + series.counts[i].get_str() + "\n";
    return s;
  }
  return finish(series_to_json(series), out);
}

std::string format_certificate(const BoundCertificate& cert, const OutputOptions& out) {
  if (out.format == Format::csv) {
    std::ostringstream os;
    os << "k,n,strict,x_witness,x_witness_approx,condition_margin,verified_up_to,series_digest\n"
       << cert.k << ',' << cert.n << ',' << (cert.strict ? "true" : "false") << ','
       << rational_text(cert.x_witness) << ',' << real_text(cert.x_witness.get_d()) << ','
       << rational_text(cert.condition_margin) << ',' << cert.verified_up_to << ','
       << cert.series_digest << '\n';
    return os.str();
  }
  return finish(certificate_to_json(cert), out);
}

std::string format_audit(const FjAudit& audit, const OutputOptions& out) {
  if (out.format == Format::csv) {
    std::string s = "j,tail,F_j_count,bound,pass\n";
    for (const auto& r : audit.rows) {
      s += std::to_string(r.period) + "," + std::to_string(r.tail) + "," +
           std::to_string(r.count) + "," + r.bound.get_str() + "," +
           (r.pass() ? "true" : "false") + "\n";
    }
    return s;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& r : audit.rows) {
    rows.push_back(ordered_json{{"j", r.period},
                                {"tail", r.tail},
                                {"F_j_count", std::to_string(r.count)},
                                {"bound", r.bound.get_str()},
                                {"pass", r.pass()}});
  }
  ordered_json doc{
      {"k", audit.k},
      {"n", audit.n},
      {"strict", audit.strict},
      {"i", audit.prefix_length},
      {"rows", std::move(rows)},
      {"F_size", std::to_string(audit.f_size)},
      {"balance", audit.balance.get_str()},
      {"row_sum", audit.row_sum.get_str()},
      {"rows_pass", audit.rows_pass()},
      {"sum_dominates", audit.sum_dominates()},
      {"balance_exact", audit.balance_exact()},
      {"suffix_determined", audit.suffix_determined},
      {"all_pass", audit.all_pass()},
      {"counterexamples", audit.counterexamples},
  };
  return finish(std::move(doc), out);
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns{
      "k",          "n",          "root_free",        "root_plus",        "target_free",
      "target_plus", "certified_free", "certified_plus", "big_jump",       "small_variation",
      "residual_free_k2", "residual_plus_k2", "ratio_free", "ratio_plus",  "ratio_tail_free",
      "ratio_tail_plus"};
  return columns;
}

std::string format_report(const std::vector<ReportRow>& rows, const OutputOptions& out) {
  auto certified_text = [](const std::optional<mpq_class>& q) {
    return q ? rational_text(*q) : std::string();
  };
  if (out.format == Format::csv) {
    std::string s;
    const auto& cols = report_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
    s += "\n";
    for (const auto& r : rows) {
      const std::vector<std::string> cells{
          std::to_string(r.k),          std::to_string(r.n),
          real_text(r.root_free),       real_text(r.root_plus),
          real_text(r.target_free),     real_text(r.target_plus),
          certified_text(r.certified_free), certified_text(r.certified_plus),
          real_text(r.big_jump),        real_text(r.small_variation),
          real_text(r.residual_free_k2), real_text(r.residual_plus_k2),
          real_text(r.ratio_free),      real_text(r.ratio_plus),
          real_text(r.ratio_tail_free), real_text(r.ratio_tail_plus)};
      for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
      s += "\n";
    }
    return s;
  }

  auto certified_json = [](const std::optional<mpq_class>& q) {
    return q ? rational_json(*q) : ordered_json(nullptr);
  };
  ordered_json by_n = ordered_json::object();
  for (const auto& r : rows) {
    by_n[std::to_string(r.n)][std::to_string(r.k)] = ordered_json{
        {"k", r.k},
        {"n", r.n},
        {"root_free", real_json(r.root_free)},
        {"root_plus", real_json(r.root_plus)},
        {"target_free", r.target_free},
        {"target_plus", r.target_plus},
        {"certified_free", certified_json(r.certified_free)},
        {"certified_plus", certified_json(r.certified_plus)},
        {"big_jump", real_json(r.big_jump)},
        {"small_variation", real_json(r.small_variation)},
        {"residual_free_k2", real_json(r.residual_free_k2)},
        {"residual_plus_k2", real_json(r.residual_plus_k2)},
        {"ratio_free", real_json(r.ratio_free)},
        {"ratio_plus", real_json(r.ratio_plus)},
        {"ratio_tail_free", real_json(r.ratio_tail_free)},
        {"ratio_tail_plus", real_json(r.ratio_tail_plus)},
    };
  }
  return finish(ordered_json{{"columns", report_columns()}, {"by_n", std::move(by_n)}}, out);
}

std::string format_cache(const std::vector<CountSeries>& entries, const OutputOptions& out) {
  if (out.format == Format::csv) {
    std::string s = "k,threshold,tail_max,method,max_length,digest\n";
    for (const auto& e : entries) {
      s += std::to_string(e.k) + "," + e.threshold.to_string() + "," +
           (e.tail_max ? std::to_string(*e.tail_max) : std::string()) + "," +
           std::string(method_name(e.method)) + "," + std::to_string(e.max_length()) + "," +
           series_digest(e) + "\n";
    }
    return s;
  }
  ordered_json list = ordered_json::array();
  for (const auto& e : entries) list.push_back(series_to_json(e));
  return finish(ordered_json{{"entries", std::move(list)}}, out);
}

}  // namespace powfree
