#include "powfree/cache.hpp"

#include <fstream>
#include <system_error>

#include <unistd.h>

#include "powfree/error.hpp"
#include "powfree/io.hpp"

namespace powfree {

namespace fs = std::filesystem;

CountCache::CountCache(fs::path path) : path_(std::move(path)) {}

std::vector<CountCache::Line> CountCache::load() {
  diagnostics_.clear();
  std::vector<Line> lines;
  std::ifstream in(path_);
  if (!in) return lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (text.empty()) continue;
    Line line{text, std::nullopt};
    try {
      line.series = series_from_json(nlohmann::json::parse(text));
    } catch (const std::exception& e) {
      diagnostics_.push_back(path_.string() + ":" + std::to_string(number) +
                             ": skipping corrupt cache entry: " + e.what());
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::optional<CountSeries> CountCache::get(std::uint32_t k, const Threshold& t,
                                           const TailLimit& tail_max) {
  std::optional<CountSeries> best;
  for (auto& line : load()) {
    if (!line.series) continue;
    const CountSeries& s = *line.series;
    if (s.k != k || s.threshold != t || s.tail_max != tail_max) continue;
    if (!best || s.counts.size() > best->counts.size()) best = std::move(line.series);
  }
  return best;
}

std::vector<CountSeries> CountCache::entries() {
  std::vector<CountSeries> out;
  for (auto& line : load())
    if (line.series) out.push_back(std::move(*line.series));
  return out;
}

void CountCache::put(const CountSeries& series) {
  auto lines = load();
  for (const auto& line : lines) {
    if (!line.series || !line.series->same_language(series)) continue;
    const auto& old = line.series->counts;
    const std::size_t common = std::min(old.size(), series.counts.size());
    for (std::size_t i = 0; i < common; ++i) {
      if (old[i] != series.counts[i]) {
        fail(ErrorCode::corrupt, "cached series for k=" + std::to_string(series.k) + ", " +
                                     series.threshold.to_string() + " disagrees at C_" +
                                     std::to_string(i) + ": " + old[i].get_str() + " vs " +
                                     series.counts[i].get_str());
      }
    }
    if (old.size() >= series.counts.size()) return;
  }

  // Shorter records for the key are superseded.
  std::erase_if(lines, [&](const Line& line) {
    return line.series && line.series->same_language(series);
  });
  lines.push_back({series_to_json(series).dump(), series});

  std::error_code ec;
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path(), ec);
  const fs::path tmp = path_.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot write cache file " + tmp.string());
    for (const auto& line : lines) out << line.text << '\n';
    out.flush();
    if (!out) fail(ErrorCode::io, "failed writing cache file " + tmp.string());
  }
  fs::rename(tmp, path_, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::io, "cannot replace cache file " + path_.string());
  }
}

}  // namespace powfree
