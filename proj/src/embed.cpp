#include "casecrit/embed.hpp"

#include <cmath>

#include "casecrit/io.hpp"

namespace casecrit {

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

}  // namespace

std::size_t TokenSequence::live_count() const {
  std::size_t n = 0;
  for (unsigned char m : mask) n += m;
  return n;
}

TokenSequence tokenize(std::string_view text) {
  TokenSequence seq;
  seq.tokens.reserve(kMaxTokens);
  std::string current;
  auto flush = [&] {
    if (!current.empty() && seq.tokens.size() < kMaxTokens) {
      seq.tokens.push_back(std::move(current));
    }
    current.clear();
  };
  for (char c : text) {
    if (is_alnum(c)) {
      current.push_back(to_lower(c));
    } else {
      flush();
    }
  }
  flush();
  seq.mask.assign(kMaxTokens, 0);
  std::fill(seq.mask.begin(), seq.mask.begin() + seq.tokens.size(), 1);
  seq.tokens.resize(kMaxTokens);
  return seq;
}

Vector mean_pool(std::span<const Vector> token_vectors,
                 std::span<const unsigned char> mask) {
  if (token_vectors.size() != mask.size()) {
    throw DataError("mean_pool: " + std::to_string(token_vectors.size()) +
                    " vectors but mask of length " +
                    std::to_string(mask.size()));
  }
  // Running mean m += (v - m) / n; copies of one vector pool to it exactly.
  Vector mean;
  std::size_t live = 0;
  for (std::size_t i = 0; i < token_vectors.size(); ++i) {
    if (!mask[i]) continue;
    const Vector& v = token_vectors[i];
    if (live == 0) {
      mean.assign(v.size(), 0.0);
    } else if (v.size() != mean.size()) {
      throw DataError("mean_pool: token vectors differ in dimension");
    }
    ++live;
    const double n = static_cast<double>(live);
    for (std::size_t k = 0; k < v.size(); ++k) mean[k] += (v[k] - mean[k]) / n;
  }
  if (live == 0) throw DataError("mean_pool: mask selects no tokens");
  return mean;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Vector hash_embed(const TokenSequence& sequence, std::size_t dim) {
  if (dim == 0) throw DataError("embedding dimension must be positive");
  // Sparse form of mean_pool over signed one-hot token vectors.
  Vector v(dim, 0.0);
  std::size_t live = 0;
  for (std::size_t i = 0; i < sequence.tokens.size(); ++i) {
    if (!sequence.mask[i]) continue;
    const std::uint64_t h = fnv1a64(sequence.tokens[i]);
    v[h % dim] += (h >> 63) ? -1.0 : 1.0;
    ++live;
  }
  if (live == 0) throw DataError("hash_embed: sequence has no live tokens");
  double norm2 = 0.0;
  for (double& x : v) {
    x /= static_cast<double>(live);
    norm2 += x * x;
  }
  if (norm2 > 0.0) {
    const double norm = std::sqrt(norm2);
    for (double& x : v) x /= norm;
  }
  return v;
}

Vector hash_embed_text(std::string_view text, std::size_t dim) {
  return hash_embed(tokenize(text), dim);
}

EmbeddingSet::EmbeddingSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DataError("embedding dimension must be positive");
}

void EmbeddingSet::add(std::string id, Vector values) {
  if (id.empty() || id.find_first_of(" \t\r\n") != std::string::npos) {
    throw DataError("embedding id '" + id +
                    "' is empty or contains whitespace");
  }
  if (values.size() != dim_) {
    throw DataError("embedding row '" + id + "' has " +
                    std::to_string(values.size()) + " values, expected " +
                    std::to_string(dim_));
  }
  for (double x : values) {
    if (!std::isfinite(x)) {
      throw DataError("embedding row '" + id + "' has a non-finite value");
    }
  }
  if (!index_.emplace(id, ids_.size()).second) {
    throw DataError("duplicate embedding id '" + id + "'");
  }
  ids_.push_back(std::move(id));
  rows_.push_back(std::move(values));
}

const Vector& EmbeddingSet::at(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw DataError("no embedding for id '" + id + "'");
  return rows_[it->second];
}

EmbeddingSet parse_embeddings(std::string_view text) {
  auto lines = io::split_lines(text);
  if (lines.empty()) throw DataError("embedding file is empty");
  auto header = split_fields(lines[0]);
  if (header.size() != 2 || header[0] != "dim") {
    throw DataError("embedding file must start with 'dim N'");
  }
  std::size_t dim = 0;
  try {
    const double d = io::parse_double(header[1]);
    if (d < 1 || d != std::floor(d)) throw DataError("");
    dim = static_cast<std::size_t>(d);
  } catch (const DataError&) {
    throw DataError("invalid embedding dimension '" + std::string(header[1]) +
                    "'");
  }

  EmbeddingSet set(dim);
  for (std::size_t n = 1; n < lines.size(); ++n) {
    auto fields = split_fields(lines[n]);
    if (fields.empty()) {
      throw DataError("line " + std::to_string(n + 1) + ": empty row");
    }
    std::string id(fields[0]);
    if (fields.size() - 1 != dim) {
      throw DataError("line " + std::to_string(n + 1) + ": row '" + id +
                      "' has " + std::to_string(fields.size() - 1) +
                      " values, expected " + std::to_string(dim));
    }
    Vector values;
    values.reserve(dim);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      values.push_back(io::parse_double(fields[k]));
    }
    set.add(std::move(id), std::move(values));
  }
  return set;
}

std::string serialize_embeddings(const EmbeddingSet& set) {
  std::string out = "dim " + std::to_string(set.dim()) + "\n";
  for (const auto& id : set.ids()) {
    out += id;
    for (double x : set.at(id)) {
      out += ' ';
      out += io::format_double(x);
    }
    out += '\n';
  }
  return out;
}

EmbeddingSet read_embeddings(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_embeddings(text);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_embeddings(const std::filesystem::path& path,
                      const EmbeddingSet& set) {
  io::write_file_atomic(path, serialize_embeddings(set));
}

}  // namespace casecrit
