#include "fincollab/rag/index.hpp"

#include "fincollab/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace fincollab::rag {

namespace {

double dot(const std::vector<float> &a, const std::vector<float> &b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

double norm_of(const std::vector<float> &v) { return std::sqrt(dot(v, v)); }

double cosine_with_norms(const std::vector<float> &a, double norm_a, const std::vector<float> &b, double norm_b) {
  if (norm_a == 0.0 || norm_b == 0.0) {
    return 0.0;
  }
  return dot(a, b) / (norm_a * norm_b);
}

std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

double cosine_similarity(const std::vector<float> &a, const std::vector<float> &b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  }
  return cosine_with_norms(a, norm_of(a), b, norm_of(b));
}

VectorIndex::VectorIndex(std::shared_ptr<const Embedder> embedder, std::map<std::string, std::vector<Entry>> documents)
    : embedder_(std::move(embedder)), documents_(std::move(documents)) {}

VectorIndex VectorIndex::build(std::shared_ptr<const Embedder> embedder,
                               const std::vector<std::pair<std::string, std::string>> &documents,
                               ChunkingOptions options) {
  std::map<std::string, std::vector<Entry>> entries;
  for (const auto &[doc_id, text] : documents) {
    if (entries.count(doc_id)) {
      throw Error(ErrorCode::InvalidArgument, "duplicate document id '" + doc_id + "'");
    }
    auto &list = entries[doc_id];
    for (auto &chunk : chunk_document(doc_id, text, options)) {
      auto embedding = embedder->embed(chunk.text);
      if (embedding.values.size() != embedder->dimension()) {
        throw Error(ErrorCode::EmbedderFailure, "embedder returned wrong dimension");
      }
      const double n = norm_of(embedding.values);
      list.push_back({std::move(chunk), std::move(embedding), n});
    }
  }
  return VectorIndex(std::move(embedder), std::move(entries));
}

VectorIndex VectorIndex::load(std::shared_ptr<const Embedder> embedder,
                              const std::vector<std::pair<std::string, std::string>> &documents,
                              const std::filesystem::path &vectors_file, ChunkingOptions options) {
  std::map<std::string, std::vector<Entry>> entries;
  for (const auto &[doc_id, text] : documents) {
    auto &list = entries[doc_id];
    for (auto &chunk : chunk_document(doc_id, text, options)) {
      list.push_back({std::move(chunk), {}, 0.0});
    }
  }
  std::ifstream in(vectors_file);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read " + vectors_file.string());
  }
  std::string line;
  std::size_t loaded = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string doc_id;
    std::size_t index = 0;
    if (!std::getline(fields, doc_id, '\t') || !(fields >> index)) {
      throw Error(ErrorCode::ParseError, vectors_file.string() + ":" + std::to_string(line_no) + ": bad record");
    }
    auto it = entries.find(doc_id);
    if (it == entries.end() || index >= it->second.size()) {
      throw Error(ErrorCode::ParseError, vectors_file.string() + ":" + std::to_string(line_no) +
                                             ": no chunk " + doc_id + "#" + std::to_string(index));
    }
    auto &entry = it->second[index];
    float v = 0.0f;
    while (fields >> v) {
      entry.embedding.values.push_back(v);
    }
    if (entry.embedding.values.size() != embedder->dimension()) {
      throw Error(ErrorCode::ParseError, vectors_file.string() + ":" + std::to_string(line_no) + ": dimension " +
                                             std::to_string(entry.embedding.values.size()));
    }
    entry.embedding.source_hash = hash_text(entry.chunk.text);
    entry.norm = norm_of(entry.embedding.values);
    ++loaded;
  }
  std::size_t expected = 0;
  for (const auto &[_, list] : entries) expected += list.size();
  if (loaded != expected) {
    throw Error(ErrorCode::ParseError, vectors_file.string() + ": " + std::to_string(loaded) + " vectors for " +
                                           std::to_string(expected) + " chunks");
  }
  return VectorIndex(std::move(embedder), std::move(entries));
}

std::size_t VectorIndex::size() const {
  std::size_t n = 0;
  for (const auto &[_, list] : documents_) n += list.size();
  return n;
}

std::vector<ScoredChunk> VectorIndex::retrieve(std::string_view query, std::size_t k) const {
  if (size() == 0) {
    throw Error(ErrorCode::EmptyIndex, "index has no chunks");
  }
  return retrieve(embedder_->embed(query), k);
}

std::vector<ScoredChunk> VectorIndex::retrieve(const EmbeddingVector &query, std::size_t k) const {
  if (size() == 0) {
    throw Error(ErrorCode::EmptyIndex, "index has no chunks");
  }
  if (k == 0) {
    throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  }
  if (query.values.size() != embedder_->dimension()) {
    throw Error(ErrorCode::InvalidArgument, "query dimension mismatch");
  }
  const double query_norm = norm_of(query.values);
  struct Candidate {
    const Entry *entry;
    double score;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(size());
  for (const auto &[_, list] : documents_) {
    for (const auto &entry : list) {
      candidates.push_back({&entry, cosine_with_norms(query.values, query_norm, entry.embedding.values, entry.norm)});
    }
  }
  const auto take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take), candidates.end(),
                    [](const Candidate &a, const Candidate &b) {
                      if (a.score != b.score) return a.score > b.score;
                      if (a.entry->chunk.doc_id != b.entry->chunk.doc_id) {
                        return a.entry->chunk.doc_id < b.entry->chunk.doc_id;
                      }
                      return a.entry->chunk.index < b.entry->chunk.index;
                    });
  std::vector<ScoredChunk> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({candidates[i].entry->chunk, candidates[i].score});
  }
  return out;
}

void VectorIndex::save_vectors(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  out << std::setprecision(std::numeric_limits<float>::max_digits10);
  for (const auto &[doc_id, list] : documents_) {
    for (const auto &entry : list) {
      out << doc_id << '\t' << entry.chunk.index;
      for (float v : entry.embedding.values) {
        out << ' ' << v;
      }
      out << '\n';
    }
  }
}

std::string FilingLibrary::corpus_file_name(const std::string &ticker) { return ticker + "_10K_2023.txt"; }

FilingLibrary FilingLibrary::load(const std::filesystem::path &corpus_dir, const std::vector<std::string> &tickers,
                                  std::shared_ptr<const Embedder> embedder, ChunkingOptions options) {
  FilingLibrary library;
  for (const auto &ticker : tickers) {
    const auto file = corpus_dir / corpus_file_name(ticker);
    if (!std::filesystem::exists(file)) {
      throw Error(ErrorCode::IoError, "no filing for " + ticker + " at " + file.string());
    }
    const auto doc_id = file.stem().string();
    library.add(ticker, VectorIndex::build(embedder, {{doc_id, read_text(file)}}, options));
  }
  return library;
}

void FilingLibrary::add(std::string ticker, VectorIndex index) {
  indexes_.insert_or_assign(std::move(ticker), std::move(index));
}

const VectorIndex *FilingLibrary::find(const std::string &ticker) const {
  auto it = indexes_.find(ticker);
  return it == indexes_.end() ? nullptr : &it->second;
}

std::vector<std::string> FilingLibrary::tickers() const {
  std::vector<std::string> out;
  for (const auto &[t, _] : indexes_) out.push_back(t);
  return out;
}

}  // namespace fincollab::rag
