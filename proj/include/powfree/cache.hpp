#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "powfree/count_series.hpp"

namespace powfree {

/// Count series persisted one JSON document per line, keyed by
/// (k, threshold, tail_max). Each key keeps its longest series. Writes go
/// through a temporary file and a rename so readers never see a partial file.
///
/// Lines that fail to parse or validate are reported in diagnostics() and
/// skipped; they are preserved verbatim on rewrite.
class CountCache {
 public:
  explicit CountCache(std::filesystem::path path);

  const std::filesystem::path& path() const noexcept { return path_; }

  /// Longest stored series for the key, if any.
  std::optional<CountSeries> get(std::uint32_t k, const Threshold& t,
                                 const TailLimit& tail_max);

  /// Stores `series` unless an equally long or longer one exists for its key.
  /// Throws Error(io) if the file cannot be written and Error(corrupt) if the
  /// stored series disagrees with `series` on their common prefix.
  void put(const CountSeries& series);

  /// Every valid record, in file order.
  std::vector<CountSeries> entries();

  const std::vector<std::string>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  struct Line {
    std::string text;
    std::optional<CountSeries> series;
  };
  std::vector<Line> load();

  std::filesystem::path path_;
  std::vector<std::string> diagnostics_;
};

}  // namespace powfree
