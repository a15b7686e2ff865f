#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fincollab::rag {

// Tokens are whitespace-delimited words. For chunking, each token owns the
// whitespace that follows it (and the first token owns any leading
// whitespace), so chunk texts tile the document exactly.

struct Chunk {
  std::string doc_id;
  std::size_t index = 0;
  std::string text;
  std::size_t token_count = 0;

  friend bool operator==(const Chunk &, const Chunk &) = default;
};

struct ChunkingOptions {
  std::size_t chunk_size = 1000;
  /// Tokens shared by consecutive chunks. Exact reconstruction by
  /// concatenation only holds for 0.
  std::size_t overlap = 0;
};

std::size_t count_tokens(std::string_view text);

/// Splits `text` into word tokens (no whitespace).
std::vector<std::string_view> tokenize(std::string_view text);

/// Greedy sequential split: every chunk but possibly the last holds exactly
/// chunk_size tokens. Throws Error{EmptyDocument} when the text has no tokens,
/// Error{InvalidArgument} for chunk_size 0 or overlap >= chunk_size.
std::vector<Chunk> chunk_document(const std::string &doc_id, std::string_view text, ChunkingOptions options = {});

}  // namespace fincollab::rag
