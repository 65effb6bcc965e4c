#ifndef CASECRIT_EMBED_HPP_
#define CASECRIT_EMBED_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "casecrit/core.hpp"

namespace casecrit {

inline constexpr std::size_t kMaxTokens = 128;
inline constexpr std::size_t kDefaultEmbeddingDim = 768;

struct TokenSequence {
  std::vector<std::string> tokens;  // always kMaxTokens long, "" = padding
  std::vector<unsigned char> mask;  // 1 for real tokens

  std::size_t live_count() const;
};

// ASCII-lowercases, splits on every run of non-[a-z0-9] bytes, keeps the
// first kMaxTokens tokens and pads the rest with mask 0.
TokenSequence tokenize(std::string_view text);

// Component-wise mean of the vectors whose mask entry is 1.
Vector mean_pool(std::span<const Vector> token_vectors,
                 std::span<const unsigned char> mask);

std::uint64_t fnv1a64(std::string_view bytes);

// Signed feature hashing: every live token contributes +-1 at
// fnv1a64(token) % dim (sign from bit 63), the token vectors are mean
// pooled and the result L2-normalized. A vector whose hashes cancel exactly
// stays zero.
Vector hash_embed(const TokenSequence& sequence, std::size_t dim);
Vector hash_embed_text(std::string_view text, std::size_t dim);

class EmbeddingSet {
 public:
  explicit EmbeddingSet(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool contains(const std::string& id) const { return index_.contains(id); }

  // Throws DataError for a wrong-length or non-finite row, a duplicate id,
  // or an id that is empty or contains whitespace.
  void add(std::string id, Vector values);

  // Throws DataError if id is absent.
  const Vector& at(const std::string& id) const;

  // Insertion order.
  const std::vector<std::string>& ids() const { return ids_; }

  friend bool operator==(const EmbeddingSet& a, const EmbeddingSet& b) {
    return a.dim_ == b.dim_ && a.ids_ == b.ids_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t dim_;
  std::vector<std::string> ids_;
  std::vector<Vector> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Text format: "dim N" header line, then "id v1 ... vN" per row.
EmbeddingSet parse_embeddings(std::string_view text);
std::string serialize_embeddings(const EmbeddingSet& set);
EmbeddingSet read_embeddings(const std::filesystem::path& path);
void write_embeddings(const std::filesystem::path& path,
                      const EmbeddingSet& set);

}  // namespace casecrit

#endif  // CASECRIT_EMBED_HPP_
