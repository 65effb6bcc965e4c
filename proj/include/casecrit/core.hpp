#ifndef CASECRIT_CORE_HPP_
#define CASECRIT_CORE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace casecrit {

// Input data is malformed or violates a precondition of the pipeline.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical pole or non-finite value was hit during computation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

inline constexpr std::size_t kNumClasses = 4;

class Sentiment {
 public:
  // Throws DataError unless value is -1, 0 or +1.
  explicit Sentiment(int value);

  int value() const { return value_; }

  friend bool operator==(Sentiment, Sentiment) = default;

 private:
  int value_;
};

enum class PartyRole { kPetitioner, kDefendant };

struct PartyMention {
  std::string surface;
  PartyRole role = PartyRole::kPetitioner;
  Sentiment sentiment{0};

  friend bool operator==(const PartyMention&, const PartyMention&) = default;
};

enum class CaseDecision { kPetitionerLose, kPetitionerWin };

struct AnnotatedSentence {
  std::string id;
  std::string case_id;
  std::string text;
  CaseDecision decision = CaseDecision::kPetitionerLose;
  std::vector<PartyMention> mentions;

  friend bool operator==(const AnnotatedSentence&,
                         const AnnotatedSentence&) = default;
};

// Impact of a sentence towards the petitioner.
enum class Impact { kNegative, kPositive, kNeutral };

// One of the four criticality classes. Index order is fixed:
//   0 = lose & negative, 1 = lose & positive,
//   2 = win & negative,  3 = win & positive.
// Indices 0-1 form the "lose" polarity, 2-3 the "win" polarity.
class ClassLabel {
 public:
  // Throws DataError for an index outside [0, 4).
  explicit ClassLabel(std::size_t index);

  // Throws DataError for Impact::kNeutral; neutral sentences carry no class.
  static ClassLabel from(CaseDecision decision, Impact impact);

  std::size_t index() const { return index_; }
  CaseDecision decision() const;
  Impact impact() const;

  friend bool operator==(ClassLabel, ClassLabel) = default;
  friend auto operator<=>(ClassLabel, ClassLabel) = default;

 private:
  std::size_t index_;
};

// True when the two classes sit on different sides of the win/lose split.
bool is_opposite(ClassLabel a, ClassLabel b);

std::string_view class_name(ClassLabel label);

struct LabeledExample {
  std::string sentence_id;
  Vector embedding;
  ClassLabel label{0};

  friend bool operator==(const LabeledExample&,
                         const LabeledExample&) = default;
};

struct SplitDataset {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> validation;
  std::vector<LabeledExample> test;
};

struct Violation {
  std::string sentence_id;
  std::string reason;
};

// Checks id uniqueness, per-case decision consistency, non-empty text and
// non-empty mention surfaces. Violations are returned, never thrown.
std::vector<Violation> validate_dataset(
    const std::vector<AnnotatedSentence>& sentences);

// Per-class counts of a labeled set.
std::array<std::size_t, kNumClasses> class_counts(
    const std::vector<LabeledExample>& examples);

}  // namespace casecrit

#endif  // CASECRIT_CORE_HPP_
