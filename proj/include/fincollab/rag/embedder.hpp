#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace fincollab::rag {

struct EmbeddingVector {
  std::vector<float> values;
  /// Hash of the embedded text, for provenance and cache checks.
  std::uint64_t source_hash = 0;

  friend bool operator==(const EmbeddingVector &, const EmbeddingVector &) = default;
};

/// Text to dense vector. Implementations are deterministic and safe to call
/// concurrently.
class Embedder {
 public:
  virtual ~Embedder() = default;
  /// Throws Error{EmbedderFailure}.
  virtual EmbeddingVector embed(std::string_view text) const = 0;
  [[nodiscard]] virtual std::size_t dimension() const = 0;
};

/// 64-bit FNV-1a over the bytes of `text`, mixed with `seed`.
std::uint64_t hash_text(std::string_view text, std::uint64_t seed = 0);

/// Seeded signed feature hashing of the token multiset. Tokens are
/// lower-cased and stripped of surrounding punctuation; each one adds +/-1 to
/// a single bucket. Vectors are left unnormalised, so similarity must use
/// cosine rather than a raw dot product.
class HashEmbedder final : public Embedder {
 public:
  explicit HashEmbedder(std::size_t dimension = 256, std::uint64_t seed = 0);

  EmbeddingVector embed(std::string_view text) const override;
  [[nodiscard]] std::size_t dimension() const override { return dimension_; }

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
};

}  // namespace fincollab::rag
