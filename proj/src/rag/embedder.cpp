#include "fincollab/rag/embedder.hpp"

#include "fincollab/core/error.hpp"
#include "fincollab/rag/chunker.hpp"

#include <cctype>
#include <string>

namespace fincollab::rag {

namespace {

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finaliser
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string normalize(std::string_view token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && std::ispunct(static_cast<unsigned char>(token[begin]))) ++begin;
  while (end > begin && std::ispunct(static_cast<unsigned char>(token[end - 1]))) --end;
  std::string out(token.substr(begin, end - begin));
  for (auto &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

std::uint64_t hash_text(std::string_view text, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ mix(seed);
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

HashEmbedder::HashEmbedder(std::size_t dimension, std::uint64_t seed) : dimension_(dimension), seed_(seed) {
  if (dimension_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
  }
}

EmbeddingVector HashEmbedder::embed(std::string_view text) const {
  const auto tokens = tokenize(text);
  if (tokens.empty()) {
    throw Error(ErrorCode::EmbedderFailure, "cannot embed empty text");
  }
  EmbeddingVector out;
  out.values.assign(dimension_, 0.0f);
  out.source_hash = hash_text(text);
  for (auto token : tokens) {
    const auto norm = normalize(token);
    if (norm.empty()) {
      continue;
    }
    const auto h = mix(hash_text(norm, seed_));
    const auto bucket = static_cast<std::size_t>(h % dimension_);
    out.values[bucket] += (h >> 63) != 0 ? -1.0f : 1.0f;
  }
  return out;
}

}  // namespace fincollab::rag
