#pragma once

#include "fincollab/core/task.hpp"
#include "fincollab/rag/index.hpp"
#include "fincollab/toolkit/providers.hpp"
#include "fincollab/toolkit/registry.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fincollab::toolkit {

inline constexpr const char *kGetStockPrices = "get_stock_prices";
inline constexpr const char *kGetCompanyNews = "get_company_news";
inline constexpr const char *kGetSocialPosts = "get_social_posts";
inline constexpr const char *kGetFundamentals = "get_fundamentals";

ToolSpec stock_prices_spec();
ToolSpec company_news_spec();
ToolSpec social_posts_spec();
ToolSpec fundamentals_spec();

/// Tool names available to each task. Decision gets none.
std::vector<std::string> task_tool_names(Task task);
/// Specs for task_tool_names(task), in that order.
std::vector<ToolSpec> task_toolset(Task task);
/// Throws Error{UnknownTask}.
std::vector<ToolSpec> task_toolset(std::string_view task_name);

struct RegistryOptions {
  std::size_t payload_budget = 4000;
  std::size_t retrieve_default_k = 3;
};

/// Registry holding the four data tools plus retrieve_filing over `filings`
/// (looked up by the invocation's ticker).
ToolRegistry standard_registry(const Providers &providers, std::shared_ptr<const rag::FilingLibrary> filings,
                               RegistryOptions options = {});

}  // namespace fincollab::toolkit
