#pragma once

#include "fincollab/core/tool.hpp"
#include "fincollab/rag/index.hpp"

#include <string>
#include <vector>

namespace fincollab::rag {

inline constexpr const char *kRetrieveFilingTool = "retrieve_filing";
inline constexpr std::size_t kDefaultRetrievalK = 3;

/// retrieve_filing{query: string (required), k: integer >= 1 (default 3)}.
ToolSpec rag_tool_spec(std::size_t default_k = kDefaultRetrievalK);

/// Tool payload: one block per hit, headed "[doc=<id> chunk=<i> score=<s>]".
/// Scores use fixed 4-decimal formatting so payloads are reproducible.
std::string format_results(const std::vector<ScoredChunk> &hits);

/// Stateless handler body: validates nothing beyond retrieve()'s contract.
std::string run_retrieval(const VectorIndex &index, const Json &arguments, std::size_t default_k = kDefaultRetrievalK);

}  // namespace fincollab::rag
