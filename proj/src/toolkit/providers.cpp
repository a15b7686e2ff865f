#include "fincollab/toolkit/providers.hpp"

#include "fincollab/core/error.hpp"

namespace fincollab::toolkit {

std::vector<PriceBar> FixturePriceProvider::prices(const std::string &ticker, Date start, Date end) const {
  std::vector<PriceBar> out;
  for (const auto &bar : store_->get(ticker).prices) {
    if (bar.date >= start && bar.date <= end) out.push_back(bar);
  }
  return out;
}

std::vector<NewsItem> FixtureNewsProvider::news(const std::string &ticker, Date start, Date end) const {
  std::vector<NewsItem> out;
  for (const auto &item : store_->get(ticker).news) {
    if (item.date >= start && item.date <= end) out.push_back(item);
  }
  return out;
}

std::vector<SocialPost> FixtureSocialProvider::posts(const std::string &ticker, Date start, Date end) const {
  std::vector<SocialPost> out;
  for (const auto &post : store_->get(ticker).social) {
    if (post.date >= start && post.date <= end) out.push_back(post);
  }
  return out;
}

std::vector<FundamentalRecord> FixtureFundamentalsProvider::fundamentals(const std::string &ticker, Date as_of,
                                                                         bool inclusive) const {
  std::vector<FundamentalRecord> out;
  for (const auto &rec : store_->get(ticker).fundamentals) {
    if (inclusive ? rec.as_of <= as_of : rec.as_of < as_of) out.push_back(rec);
  }
  return out;
}

Providers fixture_providers(std::shared_ptr<const FixtureStore> store) {
  return Providers{std::make_shared<FixturePriceProvider>(store), std::make_shared<FixtureNewsProvider>(store),
                   std::make_shared<FixtureSocialProvider>(store),
                   std::make_shared<FixtureFundamentalsProvider>(store)};
}

}  // namespace fincollab::toolkit
