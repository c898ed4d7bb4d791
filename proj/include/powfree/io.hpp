#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "powfree/analyze.hpp"
#include "powfree/bounds.hpp"
#include "powfree/count_series.hpp"
#include "powfree/word.hpp"

namespace powfree {

enum class Format { json, csv };

std::optional<Format> parse_format(std::string_view name) noexcept;

struct OutputOptions {
  Format format = Format::json;
  /// Adds a generated_at field to JSON documents.
  bool timestamp = true;
};

/// "p/q" or "p", optionally followed by "+" (equivalent to strict = true).
/// Throws Error(invalid_argument) on malformed text or a value not above 1.
Threshold parse_threshold(std::string_view text, bool strict);

/// ASCII letters a..z map to 1..26 over a 26-letter alphabet; a comma-separated
/// list of positive integers gives the alphabet {1..max letter}.
Word parse_word(std::string_view text);
std::string word_text(const Word& w);

nlohmann::ordered_json series_to_json(const CountSeries& series);
/// Throws Error(corrupt) when the document is not a well-formed series.
CountSeries series_from_json(const nlohmann::json& doc);

nlohmann::ordered_json certificate_to_json(const BoundCertificate& cert);
BoundCertificate certificate_from_json(const nlohmann::json& doc);

std::string rational_text(const mpq_class& q);

std::string format_check(const Word& w, const Threshold& t,
                         const std::optional<ViolationWitness>& witness,
                         const OutputOptions& out);
std::string format_series(const CountSeries& series, const OutputOptions& out);
std::string format_certificate(const BoundCertificate& cert, const OutputOptions& out);
std::string format_audit(const FjAudit& audit, const OutputOptions& out);
std::string format_report(const std::vector<ReportRow>& rows, const OutputOptions& out);
std::string format_cache(const std::vector<CountSeries>& entries,
                         const OutputOptions& out);

/// Column order of report CSV output and of each JSON report cell.
const std::vector<std::string>& report_columns();

}  // namespace powfree
