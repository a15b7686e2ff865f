#include "fincollab/toolkit/financial_tools.hpp"

#include "fincollab/rag/retrieval_tool.hpp"

#include <sstream>

namespace fincollab::toolkit {

namespace {

ParamSpec ticker_param() {
  return {"ticker", ParamType::String, true, "Stock ticker symbol, e.g. IBM.", std::nullopt, std::nullopt};
}

ParamSpec date_param(const char *name, const char *description) {
  return {name, ParamType::Date, true, description, std::nullopt, std::nullopt};
}

ToolSpec ranged_spec(const char *name, const char *description) {
  return {name,
          description,
          {ticker_param(), date_param("start", "First day of the range (YYYY-MM-DD)."),
           date_param("end", "Last day of the range (YYYY-MM-DD).")}};
}

struct Range {
  std::string ticker;
  Date start, end;
};

Range range_of(const Json &args) {
  return {args.at("ticker").get<std::string>(), Date::from_string(args.at("start").get<std::string>()),
          Date::from_string(args.at("end").get<std::string>())};
}

std::string header(const char *what, const Range &r) {
  return std::string(what) + " for " + r.ticker + " from " + r.start.to_string() + " to " + r.end.to_string();
}

std::string price_handler(const PriceProvider &provider, const Json &args) {
  const auto r = range_of(args);
  const auto bars = provider.prices(r.ticker, r.start, r.end);
  std::ostringstream out;
  out << header("Daily prices", r) << "\n";
  if (bars.empty()) return out.str() + "No trading days in range.";
  out << "date\topen\tclose";
  for (const auto &b : bars) out << "\n" << b.date.to_string() << "\t" << format_number(b.open) << "\t" << format_number(b.close);
  return out.str();
}

std::string news_handler(const NewsProvider &provider, const Json &args) {
  const auto r = range_of(args);
  const auto items = provider.news(r.ticker, r.start, r.end);
  std::ostringstream out;
  out << header("Company news", r);
  if (items.empty()) return out.str() + "\nNo news items in range.";
  for (const auto &n : items) out << "\n\n" << n.date.to_string() << " | " << n.headline << "\n" << n.summary;
  return out.str();
}

std::string social_handler(const SocialProvider &provider, const Json &args) {
  const auto r = range_of(args);
  const auto posts = provider.posts(r.ticker, r.start, r.end);
  std::ostringstream out;
  out << header("Social posts", r);
  if (posts.empty()) return out.str() + "\nNo posts in range.";
  for (const auto &p : posts) {
    out << "\n\n" << p.date.to_string() << " | score " << p.score << " | " << p.title;
    if (!p.body.empty()) out << "\n" << p.body;
  }
  return out.str();
}

std::string fundamentals_handler(const FundamentalsProvider &provider, const Json &args,
                                 const InvocationContext &ctx) {
  const auto ticker = args.at("ticker").get<std::string>();
  const auto period = args.contains("period") ? args["period"].get<std::string>() : std::string();
  std::ostringstream out;
  out << "Fundamentals for " << ticker << " as of " << ctx.release_date.to_string();
  bool any = false;
  for (const auto &rec : provider.fundamentals(ticker, ctx.release_date, ctx.leakage_inclusive)) {
    if (!period.empty() && rec.period != period) continue;
    if (!any) out << "\nmetric\tperiod\tvalue\tas_of";
    any = true;
    out << "\n" << rec.metric << "\t" << rec.period << "\t" << format_number(rec.value) << "\t" << rec.as_of.to_string();
  }
  if (!any) out << "\nNo records.";
  return out.str();
}

}  // namespace

ToolSpec stock_prices_spec() {
  return ranged_spec(kGetStockPrices, "Daily open and close prices for a stock over a date range.");
}

ToolSpec company_news_spec() {
  return ranged_spec(kGetCompanyNews, "News headlines and summaries about a company over a date range.");
}

ToolSpec social_posts_spec() {
  return ranged_spec(kGetSocialPosts, "Social media posts mentioning a stock over a date range.");
}

ToolSpec fundamentals_spec() {
  return {kGetFundamentals,
          "Reported financial metrics for a company (revenue, margins, debt and similar).",
          {ticker_param(),
           {"period", ParamType::String, false, "Restrict to one fiscal period, e.g. FY2023.", std::nullopt,
            std::nullopt}}};
}

std::vector<std::string> task_tool_names(Task task) {
  switch (task) {
    case Task::Fundamental: return {rag::kRetrieveFilingTool, kGetFundamentals, kGetStockPrices};
    case Task::Sentiment: return {rag::kRetrieveFilingTool, kGetCompanyNews, kGetSocialPosts};
    case Task::Risk: return {rag::kRetrieveFilingTool};
    case Task::Decision: return {};
  }
  return {};
}

std::vector<ToolSpec> task_toolset(Task task) {
  std::vector<ToolSpec> out;
  for (const auto &name : task_tool_names(task)) {
    if (name == rag::kRetrieveFilingTool) out.push_back(rag::rag_tool_spec());
    else if (name == kGetFundamentals) out.push_back(fundamentals_spec());
    else if (name == kGetStockPrices) out.push_back(stock_prices_spec());
    else if (name == kGetCompanyNews) out.push_back(company_news_spec());
    else if (name == kGetSocialPosts) out.push_back(social_posts_spec());
  }
  return out;
}

std::vector<ToolSpec> task_toolset(std::string_view task_name) { return task_toolset(parse_task(task_name)); }

ToolRegistry standard_registry(const Providers &providers, std::shared_ptr<const rag::FilingLibrary> filings,
                               RegistryOptions options) {
  ToolRegistry registry(options.payload_budget);
  registry.register_tool(stock_prices_spec(), [p = providers.prices](const Json &args, const InvocationContext &) {
    return price_handler(*p, args);
  });
  registry.register_tool(company_news_spec(), [p = providers.news](const Json &args, const InvocationContext &) {
    return news_handler(*p, args);
  });
  registry.register_tool(social_posts_spec(), [p = providers.social](const Json &args, const InvocationContext &) {
    return social_handler(*p, args);
  });
  registry.register_tool(fundamentals_spec(),
                         [p = providers.fundamentals](const Json &args, const InvocationContext &ctx) {
                           return fundamentals_handler(*p, args, ctx);
                         });
  const auto k = options.retrieve_default_k;
  registry.register_tool(rag::rag_tool_spec(k), [filings, k](const Json &args, const InvocationContext &ctx) {
    const auto *index = filings ? filings->find(ctx.ticker) : nullptr;
    if (!index) throw Error(ErrorCode::ProviderError, "no filing indexed for " + ctx.ticker);
    return rag::run_retrieval(*index, args, k);
  });
  return registry;
}

}  // namespace fincollab::toolkit
