#include "fincollab/rag/chunker.hpp"

#include "fincollab/core/error.hpp"

#include <algorithm>
#include <cctype>

namespace fincollab::rag {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// Start offset of every word token.
std::vector<std::size_t> token_starts(std::string_view text) {
  std::vector<std::size_t> starts;
  bool in_word = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool space = is_space(text[i]);
    if (!space && !in_word) {
      starts.push_back(i);
    }
    in_word = !space;
  }
  return starts;
}

}  // namespace

std::size_t count_tokens(std::string_view text) { return token_starts(text).size(); }

std::vector<std::string_view> tokenize(std::string_view text) {
  std::vector<std::string_view> tokens;
  for (auto start : token_starts(text)) {
    auto end = start;
    while (end < text.size() && !is_space(text[end])) {
      ++end;
    }
    tokens.push_back(text.substr(start, end - start));
  }
  return tokens;
}

std::vector<Chunk> chunk_document(const std::string &doc_id, std::string_view text, ChunkingOptions options) {
  if (options.chunk_size == 0) {
    throw Error(ErrorCode::InvalidArgument, "chunk_size must be at least 1");
  }
  if (options.overlap >= options.chunk_size) {
    throw Error(ErrorCode::InvalidArgument, "overlap must be smaller than chunk_size");
  }
  const auto starts = token_starts(text);
  if (starts.empty()) {
    throw Error(ErrorCode::EmptyDocument, doc_id);
  }
  const std::size_t n = starts.size();
  const std::size_t stride = options.chunk_size - options.overlap;
  // Byte offset where token i's span begins; token 0 also owns leading space.
  auto span_begin = [&](std::size_t i) { return i == 0 ? std::size_t{0} : starts[i]; };
  auto span_end = [&](std::size_t i_exclusive) { return i_exclusive >= n ? text.size() : starts[i_exclusive]; };

  std::vector<Chunk> chunks;
  for (std::size_t first = 0;; first += stride) {
    const std::size_t last = std::min(first + options.chunk_size, n);
    const auto begin = span_begin(first);
    const auto end = span_end(last);
    chunks.push_back({doc_id, chunks.size(), std::string(text.substr(begin, end - begin)), last - first});
    if (last == n) {
      break;
    }
  }
  return chunks;
}

}  // namespace fincollab::rag
