#include "casecrit/core.hpp"

#include <map>
#include <set>

namespace casecrit {

Sentiment::Sentiment(int value) : value_(value) {
  if (value < -1 || value > 1) {
    throw DataError("sentiment must be -1, 0 or 1, got " +
                    std::to_string(value));
  }
}

ClassLabel::ClassLabel(std::size_t index) : index_(index) {
  if (index >= kNumClasses) {
    throw DataError("class index out of range: " + std::to_string(index));
  }
}

ClassLabel ClassLabel::from(CaseDecision decision, Impact impact) {
  if (impact == Impact::kNeutral) {
    throw DataError("neutral impact has no class label");
  }
  std::size_t index = decision == CaseDecision::kPetitionerWin ? 2 : 0;
  if (impact == Impact::kPositive) index += 1;
  return ClassLabel(index);
}

CaseDecision ClassLabel::decision() const {
  return index_ < 2 ? CaseDecision::kPetitionerLose
                    : CaseDecision::kPetitionerWin;
}

Impact ClassLabel::impact() const {
  return index_ % 2 == 0 ? Impact::kNegative : Impact::kPositive;
}

bool is_opposite(ClassLabel a, ClassLabel b) {
  return (a.index() < 2) != (b.index() < 2);
}

std::string_view class_name(ClassLabel label) {
  static constexpr std::string_view kNames[kNumClasses] = {
      "lose_negative", "lose_positive", "win_negative", "win_positive"};
  return kNames[label.index()];
}

std::vector<Violation> validate_dataset(
    const std::vector<AnnotatedSentence>& sentences) {
  std::vector<Violation> report;
  std::set<std::string> seen_ids;
  std::map<std::string, CaseDecision> case_decision;

  for (const auto& s : sentences) {
    if (s.id.empty()) {
      report.push_back({s.id, "empty sentence id"});
    } else if (!seen_ids.insert(s.id).second) {
      report.push_back({s.id, "duplicate sentence id '" + s.id + "'"});
    }
    if (s.text.empty()) {
      report.push_back({s.id, "empty text"});
    }
    for (const auto& m : s.mentions) {
      if (m.surface.empty()) {
        report.push_back({s.id, "party mention with empty surface"});
      }
    }
    auto [it, inserted] = case_decision.emplace(s.case_id, s.decision);
    if (!inserted && it->second != s.decision) {
      report.push_back(
          {s.id, "decision conflicts with earlier sentence of case '" +
                     s.case_id + "'"});
    }
  }
  return report;
}

std::array<std::size_t, kNumClasses> class_counts(
    const std::vector<LabeledExample>& examples) {
  std::array<std::size_t, kNumClasses> counts{};
  for (const auto& e : examples) ++counts[e.label.index()];
  return counts;
}

}  // namespace casecrit
