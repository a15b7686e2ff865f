#pragma once

#include "fincollab/core/date.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fincollab::toolkit {

// Fixture layout, one directory per ticker under the fixture root:
//
//   <root>/<TICKER>/meta.tsv          key  value          (needs release_date)
//   <root>/<TICKER>/prices.tsv        date open close
//   <root>/<TICKER>/news.tsv          date headline summary
//   <root>/<TICKER>/social.tsv        date title body score
//   <root>/<TICKER>/fundamentals.tsv  metric period value as_of
//
// Tab-separated, one header row, blank lines and lines starting with '#'
// ignored. Only meta.tsv is mandatory; absent files mean no records.

struct PriceBar {
  Date date;
  double open = 0;
  double close = 0;
};

struct NewsItem {
  Date date;
  std::string headline;
  std::string summary;
};

struct SocialPost {
  Date date;
  std::string title;
  std::string body;
  long score = 0;
};

struct FundamentalRecord {
  std::string metric;
  std::string period;
  double value = 0;
  Date as_of;
};

struct CompanyFixture {
  std::string ticker;
  Date release_date;
  std::map<std::string, std::string> meta;
  std::vector<PriceBar> prices;  // sorted by date
  std::vector<NewsItem> news;
  std::vector<SocialPost> social;
  std::vector<FundamentalRecord> fundamentals;
};

/// Rows of a tab-separated file with the header checked against `columns`.
/// Throws Error{ParseError} with file:line on malformed rows.
std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path &path,
                                               const std::vector<std::string> &columns);

/// Throws Error{IoError} if the directory or meta.tsv is missing.
CompanyFixture load_company_fixture(const std::filesystem::path &root, const std::string &ticker);

/// Read-only set of company fixtures.
class FixtureStore {
 public:
  static FixtureStore load(const std::filesystem::path &root, const std::vector<std::string> &tickers);
  void add(CompanyFixture fixture);
  /// Throws Error{ProviderError} for unknown tickers.
  [[nodiscard]] const CompanyFixture &get(const std::string &ticker) const;
  [[nodiscard]] bool contains(const std::string &ticker) const { return companies_.count(ticker) != 0; }

 private:
  std::map<std::string, CompanyFixture> companies_;
};

/// Shortest round-trip fixed-point form of `value` (no exponent).
std::string format_number(double value);

}  // namespace fincollab::toolkit
