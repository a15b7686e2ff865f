#include "fincollab/rag/retrieval_tool.hpp"

#include <cstdio>
#include <sstream>

namespace fincollab::rag {

ToolSpec rag_tool_spec(std::size_t default_k) {
  ToolSpec spec;
  spec.name = kRetrieveFilingTool;
  spec.description =
      "Search the company's 10-K filing. Write your own query and choose how many chunks to retrieve; "
      "refine the query and call again for another round of recall.";
  spec.params.push_back({"query", ParamType::String, true, "Natural-language search query.", std::nullopt, std::nullopt});
  spec.params.push_back({"k", ParamType::Integer, false, "Number of chunks to return.",
                         Json(static_cast<std::int64_t>(default_k)), 1.0});
  return spec;
}

std::string format_results(const std::vector<ScoredChunk> &hits) {
  std::ostringstream out;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto &hit = hits[i];
    char score[32];
    std::snprintf(score, sizeof score, "%.4f", hit.score);
    if (i > 0) out << "\n\n";
    out << "[doc=" << hit.chunk.doc_id << " chunk=" << hit.chunk.index << " score=" << score << "]\n"
        << hit.chunk.text;
  }
  return out.str();
}

std::string run_retrieval(const VectorIndex &index, const Json &arguments, std::size_t default_k) {
  const auto query = arguments.at("query").get<std::string>();
  std::size_t k = default_k;
  if (auto it = arguments.find("k"); it != arguments.end() && !it->is_null()) {
    k = it->get<std::size_t>();
  }
  return format_results(index.retrieve(query, k));
}

}  // namespace fincollab::rag
