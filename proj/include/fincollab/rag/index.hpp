#pragma once

#include "fincollab/rag/chunker.hpp"
#include "fincollab/rag/embedder.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fincollab::rag {

struct ScoredChunk {
  Chunk chunk;
  double score = 0.0;
};

/// Cosine similarity; 0 when either vector has zero norm.
double cosine_similarity(const std::vector<float> &a, const std::vector<float> &b);

/// Exact (full-scan) vector index over chunked documents.
///
/// Scores are cosine similarities because the embedders in use are not
/// normalised. Results are ordered by score descending, then doc_id and chunk
/// index ascending, which makes the output independent of insertion order.
/// Immutable once built; retrieval is safe from many threads.
class VectorIndex {
 public:
  struct Entry {
    Chunk chunk;
    EmbeddingVector embedding;
    double norm = 0.0;
  };

  /// Chunks and embeds every (doc_id, text) pair.
  static VectorIndex build(std::shared_ptr<const Embedder> embedder,
                           const std::vector<std::pair<std::string, std::string>> &documents,
                           ChunkingOptions options = {});

  /// Re-chunks the documents and attaches vectors previously written by
  /// save_vectors(). Throws Error{ParseError} if they do not line up.
  static VectorIndex load(std::shared_ptr<const Embedder> embedder,
                          const std::vector<std::pair<std::string, std::string>> &documents,
                          const std::filesystem::path &vectors_file, ChunkingOptions options = {});

  /// Top min(k, size()) chunks. Throws Error{EmptyIndex}, Error{InvalidArgument}
  /// for k == 0, Error{EmbedderFailure} for an empty query.
  [[nodiscard]] std::vector<ScoredChunk> retrieve(std::string_view query, std::size_t k) const;
  [[nodiscard]] std::vector<ScoredChunk> retrieve(const EmbeddingVector &query, std::size_t k) const;

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] const std::map<std::string, std::vector<Entry>> &documents() const { return documents_; }
  [[nodiscard]] const Embedder &embedder() const { return *embedder_; }

  /// One line per chunk: doc_id, chunk index, then the vector entries.
  void save_vectors(const std::filesystem::path &path) const;

 private:
  VectorIndex(std::shared_ptr<const Embedder> embedder, std::map<std::string, std::vector<Entry>> documents);

  std::shared_ptr<const Embedder> embedder_;
  std::map<std::string, std::vector<Entry>> documents_;
};

/// Per-company filing stores: ticker -> index over that company's 10-K.
class FilingLibrary {
 public:
  /// Corpus file name for a ticker: <TICKER>_10K_2023.txt.
  static std::string corpus_file_name(const std::string &ticker);

  /// Throws Error{IoError} naming the ticker when its filing is missing.
  static FilingLibrary load(const std::filesystem::path &corpus_dir, const std::vector<std::string> &tickers,
                            std::shared_ptr<const Embedder> embedder, ChunkingOptions options = {});

  void add(std::string ticker, VectorIndex index);
  /// nullptr when the ticker has no filing.
  [[nodiscard]] const VectorIndex *find(const std::string &ticker) const;
  [[nodiscard]] std::vector<std::string> tickers() const;

 private:
  std::map<std::string, VectorIndex> indexes_;
};

}  // namespace fincollab::rag
