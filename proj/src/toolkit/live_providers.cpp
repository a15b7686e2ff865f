#include "fincollab/core/error.hpp"
#include "fincollab/net/http.hpp"
#include "fincollab/toolkit/providers.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdlib>

namespace fincollab::toolkit {

namespace {

using Json = nlohmann::json;

std::string fetch(const std::string &url, const LiveOptions &options) {
  const auto response = net::get(url, {{"User-Agent", "fincollab/1.0"}}, options.timeout);
  if (response.transport_error) throw Error(ErrorCode::ProviderError, *response.transport_error);
  if (!response.ok()) throw Error(ErrorCode::ProviderError, "HTTP " + std::to_string(response.status) + " from " +
                                                                net::parse_url(url).origin);
  return response.body;
}

Json parse_json(const std::string &body, const char *provider) {
  try {
    return Json::parse(body);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ProviderError, std::string(provider) + ": " + e.what());
  }
}

Date unix_to_date(std::int64_t seconds) {
  return Date{std::chrono::floor<std::chrono::days>(std::chrono::sys_seconds{std::chrono::seconds{seconds}})};
}

std::string require_env(const char *name) {
  const char *v = std::getenv(name);
  if (!v || !*v) throw Error(ErrorCode::ConfigError, std::string("environment variable ") + name + " is not set");
  return v;
}

}  // namespace

FmpPriceProvider::FmpPriceProvider(std::string api_key, std::string base_url, LiveOptions options)
    : api_key_(std::move(api_key)), base_url_(std::move(base_url)), options_(options) {}

std::string FmpPriceProvider::request_url(const std::string &ticker, Date start, Date end) const {
  return base_url_ + "/api/v3/historical-price-full/" + net::encode_query(ticker) + "?from=" + start.to_string() +
         "&to=" + end.to_string() + "&apikey=" + net::encode_query(api_key_);
}

std::vector<PriceBar> FmpPriceProvider::parse(const std::string &body) {
  const auto json = parse_json(body, "fmp prices");
  std::vector<PriceBar> out;
  try {
    for (const auto &row : json.value("historical", Json::array())) {
      out.push_back({Date::from_string(row.at("date").get<std::string>()), row.at("open").get<double>(),
                     row.at("close").get<double>()});
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ProviderError, std::string("fmp prices: ") + e.what());
  }
  std::sort(out.begin(), out.end(), [](const PriceBar &a, const PriceBar &b) { return a.date < b.date; });
  return out;
}

std::vector<PriceBar> FmpPriceProvider::prices(const std::string &ticker, Date start, Date end) const {
  return parse(fetch(request_url(ticker, start, end), options_));
}

FmpFundamentalsProvider::FmpFundamentalsProvider(std::string api_key, std::string base_url, LiveOptions options)
    : api_key_(std::move(api_key)), base_url_(std::move(base_url)), options_(options) {}

std::string FmpFundamentalsProvider::request_url(const std::string &ticker) const {
  return base_url_ + "/api/v3/key-metrics/" + net::encode_query(ticker) +
         "?period=annual&apikey=" + net::encode_query(api_key_);
}

std::vector<FundamentalRecord> FmpFundamentalsProvider::parse(const std::string &body) {
  const auto json = parse_json(body, "fmp key metrics");
  if (!json.is_array()) throw Error(ErrorCode::ProviderError, "fmp key metrics: expected array");
  std::vector<FundamentalRecord> out;
  try {
    for (const auto &row : json) {
      const auto as_of = Date::from_string(row.at("date").get<std::string>());
      const auto period = row.value("calendarYear", row.value("period", std::string("FY")));
      for (const auto &[key, value] : row.items()) {
        if (value.is_number()) out.push_back({key, period, value.get<double>(), as_of});
      }
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ProviderError, std::string("fmp key metrics: ") + e.what());
  }
  return out;
}

std::vector<FundamentalRecord> FmpFundamentalsProvider::fundamentals(const std::string &ticker, Date as_of,
                                                                     bool inclusive) const {
  std::vector<FundamentalRecord> out;
  for (auto &rec : parse(fetch(request_url(ticker), options_))) {
    if (inclusive ? rec.as_of <= as_of : rec.as_of < as_of) out.push_back(std::move(rec));
  }
  return out;
}

FinnhubNewsProvider::FinnhubNewsProvider(std::string api_key, std::string base_url, LiveOptions options)
    : api_key_(std::move(api_key)), base_url_(std::move(base_url)), options_(options) {}

std::string FinnhubNewsProvider::request_url(const std::string &ticker, Date start, Date end) const {
  return base_url_ + "/api/v1/company-news?symbol=" + net::encode_query(ticker) + "&from=" + start.to_string() +
         "&to=" + end.to_string() + "&token=" + net::encode_query(api_key_);
}

std::vector<NewsItem> FinnhubNewsProvider::parse(const std::string &body) {
  const auto json = parse_json(body, "finnhub news");
  if (!json.is_array()) throw Error(ErrorCode::ProviderError, "finnhub news: expected array");
  std::vector<NewsItem> out;
  try {
    for (const auto &row : json) {
      out.push_back({unix_to_date(row.at("datetime").get<std::int64_t>()), row.value("headline", ""),
                     row.value("summary", "")});
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ProviderError, std::string("finnhub news: ") + e.what());
  }
  return out;
}

std::vector<NewsItem> FinnhubNewsProvider::news(const std::string &ticker, Date start, Date end) const {
  std::vector<NewsItem> out;
  for (auto &item : parse(fetch(request_url(ticker, start, end), options_))) {
    if (item.date >= start && item.date <= end) out.push_back(std::move(item));
  }
  return out;
}

RedditSocialProvider::RedditSocialProvider(std::string base_url, LiveOptions options)
    : base_url_(std::move(base_url)), options_(options) {}

std::string RedditSocialProvider::request_url(const std::string &ticker) const {
  return base_url_ + "/search.json?q=" + net::encode_query(ticker) + "&sort=new&limit=100";
}

std::vector<SocialPost> RedditSocialProvider::parse(const std::string &body) {
  const auto json = parse_json(body, "reddit search");
  std::vector<SocialPost> out;
  try {
    for (const auto &child : json.at("data").at("children")) {
      const auto &d = child.at("data");
      out.push_back({unix_to_date(static_cast<std::int64_t>(d.at("created_utc").get<double>())),
                     d.value("title", ""), d.value("selftext", ""), d.value("score", 0L)});
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ProviderError, std::string("reddit search: ") + e.what());
  }
  return out;
}

std::vector<SocialPost> RedditSocialProvider::posts(const std::string &ticker, Date start, Date end) const {
  std::vector<SocialPost> out;
  for (auto &post : parse(fetch(request_url(ticker), options_))) {
    if (post.date >= start && post.date <= end) out.push_back(std::move(post));
  }
  return out;
}

Providers live_providers_from_env(LiveOptions options) {
  const auto fmp = require_env("FMP_API_KEY");
  const auto finnhub = require_env("FINNHUB_API_KEY");
  return Providers{std::make_shared<FmpPriceProvider>(fmp, "https://financialmodelingprep.com", options),
                   std::make_shared<FinnhubNewsProvider>(finnhub, "https://finnhub.io", options),
                   std::make_shared<RedditSocialProvider>("https://www.reddit.com", options),
                   std::make_shared<FmpFundamentalsProvider>(fmp, "https://financialmodelingprep.com", options)};
}

}  // namespace fincollab::toolkit
