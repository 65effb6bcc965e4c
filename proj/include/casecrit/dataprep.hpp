#ifndef CASECRIT_DATAPREP_HPP_
#define CASECRIT_DATAPREP_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casecrit/core.hpp"

namespace casecrit {

// Impact of a sentence towards the petitioner. Petitioner mentions decide
// when their sentiments do not cancel; otherwise the negated defendant sum
// decides; otherwise the sentence is neutral.
Impact derive_impact(const AnnotatedSentence& sentence);

// Class for (decision, impact), or nullopt for a neutral sentence.
std::optional<ClassLabel> assign_class(const AnnotatedSentence& sentence,
                                       Impact impact);

struct LabeledId {
  std::string id;
  ClassLabel label;

  friend bool operator==(const LabeledId&, const LabeledId&) = default;
};

struct CorpusLabeling {
  std::vector<LabeledId> labeled;
  std::array<std::size_t, kNumClasses> histogram{};
  std::vector<std::string> excluded_ids;
};

CorpusLabeling label_corpus(const std::vector<AnnotatedSentence>& sentences);

struct SplitSpec {
  std::array<std::size_t, kNumClasses> validation{25, 25, 70, 50};
  std::array<std::size_t, kNumClasses> test{25, 25, 70, 50};
  std::uint64_t seed = 0;
};

// Per class, draws exactly validation[c] and test[c] examples uniformly
// without replacement; the rest go to train. Each output list keeps the
// input order. Throws DataError naming the class if a request cannot be
// met while leaving at least one training example.
SplitDataset stratified_split(const std::vector<LabeledExample>& examples,
                              const SplitSpec& spec);

enum class ResampleMode { kNone, kOverSample, kUnderSample };

std::string_view resample_mode_name(ResampleMode mode);
ResampleMode parse_resample_mode(std::string_view name);

// OverSample keeps every original and adds seeded duplicates until each
// class matches the largest one. UnderSample draws the smallest class count
// from each class without replacement. Both shuffle the result. kNone is the
// identity. Throws DataError if any class is empty (except for kNone).
std::vector<LabeledExample> resample_train(
    const std::vector<LabeledExample>& train, ResampleMode mode,
    std::uint64_t seed);

// JSONL corpus: one AnnotatedSentence per line.
std::vector<AnnotatedSentence> parse_corpus(std::string_view text);
std::string serialize_corpus(const std::vector<AnnotatedSentence>& sentences);
std::vector<AnnotatedSentence> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path,
                  const std::vector<AnnotatedSentence>& sentences);

// JSONL labels: {"id": ..., "class": 0..3} per line.
std::vector<LabeledId> parse_labeled(std::string_view text);
std::string serialize_labeled(const std::vector<LabeledId>& labeled);
std::vector<LabeledId> read_labeled(const std::filesystem::path& path);
void write_labeled(const std::filesystem::path& path,
                   const std::vector<LabeledId>& labeled);

}  // namespace casecrit

#endif  // CASECRIT_DATAPREP_HPP_
