#include "fincollab/toolkit/fixtures.hpp"

#include "fincollab/core/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace fincollab::toolkit {

namespace {

std::vector<std::string> split_tabs(const std::string &line) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const auto tab = line.find('\t', begin);
    out.push_back(line.substr(begin, tab - begin));
    if (tab == std::string::npos) break;
    begin = tab + 1;
  }
  return out;
}

std::string where(const std::filesystem::path &path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

double parse_double(const std::string &text, const std::string &at) {
  double v = 0;
  const auto *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw Error(ErrorCode::ParseError, at + ": bad number '" + text + "'");
  return v;
}

long parse_long(const std::string &text, const std::string &at) {
  long v = 0;
  const auto *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw Error(ErrorCode::ParseError, at + ": bad integer '" + text + "'");
  return v;
}

Date parse_date(const std::string &text, const std::string &at) {
  auto d = Date::parse(text);
  if (!d) throw Error(ErrorCode::ParseError, at + ": bad date '" + text + "'");
  return *d;
}

}  // namespace

std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path &path,
                                               const std::vector<std::string> &columns) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_tabs(line);
    if (!header_seen) {
      if (fields != columns) throw Error(ErrorCode::ParseError, where(path, line_no) + ": unexpected header");
      header_seen = true;
      continue;
    }
    if (fields.size() != columns.size()) {
      throw Error(ErrorCode::ParseError, where(path, line_no) + ": expected " + std::to_string(columns.size()) +
                                             " fields, got " + std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

CompanyFixture load_company_fixture(const std::filesystem::path &root, const std::string &ticker) {
  const auto dir = root / ticker;
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::IoError, "no fixture directory for " + ticker + " at " + dir.string());
  }
  CompanyFixture fx;
  fx.ticker = ticker;
  for (auto &row : read_tsv(dir / "meta.tsv", {"key", "value"})) {
    fx.meta[row[0]] = row[1];
  }
  auto release = fx.meta.find("release_date");
  if (release == fx.meta.end()) throw Error(ErrorCode::ParseError, (dir / "meta.tsv").string() + ": no release_date");
  fx.release_date = parse_date(release->second, (dir / "meta.tsv").string());

  auto optional_rows = [&](const char *file, std::vector<std::string> columns) {
    const auto path = dir / file;
    return std::filesystem::exists(path) ? read_tsv(path, columns) : std::vector<std::vector<std::string>>{};
  };
  const auto at = [&](const char *file) { return (dir / file).string(); };

  for (const auto &r : optional_rows("prices.tsv", {"date", "open", "close"})) {
    fx.prices.push_back({parse_date(r[0], at("prices.tsv")), parse_double(r[1], at("prices.tsv")),
                         parse_double(r[2], at("prices.tsv"))});
  }
  std::sort(fx.prices.begin(), fx.prices.end(), [](const PriceBar &a, const PriceBar &b) { return a.date < b.date; });
  for (const auto &r : optional_rows("news.tsv", {"date", "headline", "summary"})) {
    fx.news.push_back({parse_date(r[0], at("news.tsv")), r[1], r[2]});
  }
  for (const auto &r : optional_rows("social.tsv", {"date", "title", "body", "score"})) {
    fx.social.push_back({parse_date(r[0], at("social.tsv")), r[1], r[2], parse_long(r[3], at("social.tsv"))});
  }
  for (const auto &r : optional_rows("fundamentals.tsv", {"metric", "period", "value", "as_of"})) {
    fx.fundamentals.push_back(
        {r[0], r[1], parse_double(r[2], at("fundamentals.tsv")), parse_date(r[3], at("fundamentals.tsv"))});
  }
  return fx;
}

FixtureStore FixtureStore::load(const std::filesystem::path &root, const std::vector<std::string> &tickers) {
  FixtureStore store;
  for (const auto &t : tickers) store.add(load_company_fixture(root, t));
  return store;
}

void FixtureStore::add(CompanyFixture fixture) {
  auto ticker = fixture.ticker;
  companies_.insert_or_assign(std::move(ticker), std::move(fixture));
}

const CompanyFixture &FixtureStore::get(const std::string &ticker) const {
  auto it = companies_.find(ticker);
  if (it == companies_.end()) throw Error(ErrorCode::ProviderError, "no fixture data for " + ticker);
  return it->second;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(value);
}

}  // namespace fincollab::toolkit
