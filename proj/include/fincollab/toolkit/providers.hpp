#pragma once

#include "fincollab/toolkit/fixtures.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fincollab::toolkit {

// Data sources behind the financial tools. Implementations must be safe to
// call concurrently and raise Error{ProviderError} on failure.

class PriceProvider {
 public:
  virtual ~PriceProvider() = default;
  virtual std::vector<PriceBar> prices(const std::string &ticker, Date start, Date end) const = 0;
};

class NewsProvider {
 public:
  virtual ~NewsProvider() = default;
  virtual std::vector<NewsItem> news(const std::string &ticker, Date start, Date end) const = 0;
};

class SocialProvider {
 public:
  virtual ~SocialProvider() = default;
  virtual std::vector<SocialPost> posts(const std::string &ticker, Date start, Date end) const = 0;
};

class FundamentalsProvider {
 public:
  virtual ~FundamentalsProvider() = default;
  /// Only records known as of `as_of` (per `inclusive`) are returned.
  virtual std::vector<FundamentalRecord> fundamentals(const std::string &ticker, Date as_of, bool inclusive) const = 0;
};

struct Providers {
  std::shared_ptr<const PriceProvider> prices;
  std::shared_ptr<const NewsProvider> news;
  std::shared_ptr<const SocialProvider> social;
  std::shared_ptr<const FundamentalsProvider> fundamentals;
};

/// All four providers backed by one shared fixture store.
Providers fixture_providers(std::shared_ptr<const FixtureStore> store);

class FixturePriceProvider final : public PriceProvider {
 public:
  explicit FixturePriceProvider(std::shared_ptr<const FixtureStore> store) : store_(std::move(store)) {}
  std::vector<PriceBar> prices(const std::string &ticker, Date start, Date end) const override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

class FixtureNewsProvider final : public NewsProvider {
 public:
  explicit FixtureNewsProvider(std::shared_ptr<const FixtureStore> store) : store_(std::move(store)) {}
  std::vector<NewsItem> news(const std::string &ticker, Date start, Date end) const override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

class FixtureSocialProvider final : public SocialProvider {
 public:
  explicit FixtureSocialProvider(std::shared_ptr<const FixtureStore> store) : store_(std::move(store)) {}
  std::vector<SocialPost> posts(const std::string &ticker, Date start, Date end) const override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

class FixtureFundamentalsProvider final : public FundamentalsProvider {
 public:
  explicit FixtureFundamentalsProvider(std::shared_ptr<const FixtureStore> store) : store_(std::move(store)) {}
  std::vector<FundamentalRecord> fundamentals(const std::string &ticker, Date as_of, bool inclusive) const override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

// Live clients. Each exposes its request URL and response parser so the wire
// shape can be checked without network access.

struct LiveOptions {
  std::chrono::seconds timeout{30};
};

/// Financial Modeling Prep daily prices: /api/v3/historical-price-full.
class FmpPriceProvider final : public PriceProvider {
 public:
  explicit FmpPriceProvider(std::string api_key, std::string base_url = "https://financialmodelingprep.com",
                            LiveOptions options = {});
  [[nodiscard]] std::string request_url(const std::string &ticker, Date start, Date end) const;
  static std::vector<PriceBar> parse(const std::string &body);
  std::vector<PriceBar> prices(const std::string &ticker, Date start, Date end) const override;

 private:
  std::string api_key_, base_url_;
  LiveOptions options_;
};

/// Financial Modeling Prep annual key metrics: /api/v3/key-metrics.
class FmpFundamentalsProvider final : public FundamentalsProvider {
 public:
  explicit FmpFundamentalsProvider(std::string api_key, std::string base_url = "https://financialmodelingprep.com",
                                   LiveOptions options = {});
  [[nodiscard]] std::string request_url(const std::string &ticker) const;
  static std::vector<FundamentalRecord> parse(const std::string &body);
  std::vector<FundamentalRecord> fundamentals(const std::string &ticker, Date as_of, bool inclusive) const override;

 private:
  std::string api_key_, base_url_;
  LiveOptions options_;
};

/// FinnHub company news: /api/v1/company-news.
class FinnhubNewsProvider final : public NewsProvider {
 public:
  explicit FinnhubNewsProvider(std::string api_key, std::string base_url = "https://finnhub.io",
                               LiveOptions options = {});
  [[nodiscard]] std::string request_url(const std::string &ticker, Date start, Date end) const;
  static std::vector<NewsItem> parse(const std::string &body);
  std::vector<NewsItem> news(const std::string &ticker, Date start, Date end) const override;

 private:
  std::string api_key_, base_url_;
  LiveOptions options_;
};

/// Reddit-style public search: /search.json?q=<ticker>.
class RedditSocialProvider final : public SocialProvider {
 public:
  explicit RedditSocialProvider(std::string base_url = "https://www.reddit.com", LiveOptions options = {});
  [[nodiscard]] std::string request_url(const std::string &ticker) const;
  static std::vector<SocialPost> parse(const std::string &body);
  std::vector<SocialPost> posts(const std::string &ticker, Date start, Date end) const override;

 private:
  std::string base_url_;
  LiveOptions options_;
};

/// Live providers with keys from FMP_API_KEY and FINNHUB_API_KEY.
/// Throws Error{ConfigError} naming the first missing variable.
Providers live_providers_from_env(LiveOptions options = {});

}  // namespace fincollab::toolkit
