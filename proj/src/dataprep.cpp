#include "casecrit/dataprep.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>

#include "casecrit/io.hpp"
#include "casecrit/random.hpp"

namespace casecrit {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

int sign(int v) { return (v > 0) - (v < 0); }

std::string line_error(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw DataError(std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string require_string(const Json& obj, const char* key) {
  const Json& v = require(obj, key);
  if (!v.is_string()) {
    throw DataError(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

CaseDecision parse_decision(const std::string& s) {
  if (s == "win") return CaseDecision::kPetitionerWin;
  if (s == "lose") return CaseDecision::kPetitionerLose;
  throw DataError("unknown decision '" + s + "'");
}

PartyRole parse_role(const std::string& s) {
  if (s == "petitioner") return PartyRole::kPetitioner;
  if (s == "defendant") return PartyRole::kDefendant;
  throw DataError("unknown role '" + s + "'");
}

AnnotatedSentence sentence_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("expected a JSON object");
  AnnotatedSentence s;
  s.id = require_string(j, "id");
  s.case_id = require_string(j, "case_id");
  s.text = require_string(j, "text");
  s.decision = parse_decision(require_string(j, "decision"));
  const Json& mentions = require(j, "mentions");
  if (!mentions.is_array()) throw DataError("'mentions' must be an array");
  for (const Json& m : mentions) {
    if (!m.is_object()) throw DataError("mention must be an object");
    PartyMention pm;
    pm.surface = require_string(m, "surface");
    pm.role = parse_role(require_string(m, "role"));
    const Json& sv = require(m, "sentiment");
    if (!sv.is_number_integer()) {
      throw DataError("sentiment must be one of -1, 0, 1");
    }
    pm.sentiment = Sentiment(sv.get<int>());
    s.mentions.push_back(std::move(pm));
  }
  return s;
}

template <typename Fn>
auto parse_jsonl(std::string_view text, Fn&& from_json) {
  std::vector<decltype(from_json(Json{}))> out;
  std::size_t line_no = 0;
  for (std::string_view line : io::split_lines(text)) {
    ++line_no;
    try {
      Json j = Json::parse(line);
      out.push_back(from_json(j));
    } catch (const Json::exception& e) {
      throw DataError(line_error(line_no, e.what()));
    } catch (const DataError& e) {
      throw DataError(line_error(line_no, e.what()));
    }
  }
  return out;
}

}  // namespace

Impact derive_impact(const AnnotatedSentence& sentence) {
  bool has_petitioner = false;
  bool has_defendant = false;
  int petitioner_sum = 0;
  int defendant_sum = 0;
  for (const auto& m : sentence.mentions) {
    if (m.role == PartyRole::kPetitioner) {
      has_petitioner = true;
      petitioner_sum += m.sentiment.value();
    } else {
      has_defendant = true;
      defendant_sum += m.sentiment.value();
    }
  }
  int s = 0;
  if (has_petitioner && petitioner_sum != 0) {
    s = sign(petitioner_sum);
  } else if (has_defendant && defendant_sum != 0) {
    s = -sign(defendant_sum);
  }
  if (s > 0) return Impact::kPositive;
  if (s < 0) return Impact::kNegative;
  return Impact::kNeutral;
}

std::optional<ClassLabel> assign_class(const AnnotatedSentence& sentence,
                                       Impact impact) {
  if (impact == Impact::kNeutral) return std::nullopt;
  return ClassLabel::from(sentence.decision, impact);
}

CorpusLabeling label_corpus(const std::vector<AnnotatedSentence>& sentences) {
  CorpusLabeling out;
  for (const auto& s : sentences) {
    if (auto label = assign_class(s, derive_impact(s))) {
      out.labeled.push_back({s.id, *label});
      ++out.histogram[label->index()];
    } else {
      out.excluded_ids.push_back(s.id);
    }
  }
  return out;
}

SplitDataset stratified_split(const std::vector<LabeledExample>& examples,
                              const SplitSpec& spec) {
  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    by_class[examples[i].label.index()].push_back(i);
  }

  enum Part : unsigned char { kTrain, kValidation, kTest };
  std::vector<Part> part(examples.size(), kTrain);
  Rng rng(spec.seed);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    auto& idx = by_class[c];
    const std::size_t requested = spec.validation[c] + spec.test[c];
    if ((requested > 0 || !idx.empty()) && requested >= idx.size()) {
      throw DataError("split infeasible for class " + std::to_string(c) + " (" +
                      std::string(class_name(ClassLabel(c))) + "): requested " +
                      std::to_string(requested) + " of " +
                      std::to_string(idx.size()) +
                      " examples, at least one must remain for training");
    }
    rng.shuffle(std::span(idx));
    for (std::size_t k = 0; k < requested; ++k) {
      part[idx[k]] = k < spec.validation[c] ? kValidation : kTest;
    }
  }

  SplitDataset split;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    switch (part[i]) {
      case kTrain: split.train.push_back(examples[i]); break;
      case kValidation: split.validation.push_back(examples[i]); break;
      case kTest: split.test.push_back(examples[i]); break;
    }
  }
  return split;
}

std::string_view resample_mode_name(ResampleMode mode) {
  switch (mode) {
    case ResampleMode::kNone: return "none";
    case ResampleMode::kOverSample: return "over";
    case ResampleMode::kUnderSample: return "under";
  }
  return "none";
}

ResampleMode parse_resample_mode(std::string_view name) {
  if (name == "none") return ResampleMode::kNone;
  if (name == "over") return ResampleMode::kOverSample;
  if (name == "under") return ResampleMode::kUnderSample;
  throw DataError("unknown resample mode '" + std::string(name) + "'");
}

std::vector<LabeledExample> resample_train(
    const std::vector<LabeledExample>& train, ResampleMode mode,
    std::uint64_t seed) {
  if (mode == ResampleMode::kNone) return train;

  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < train.size(); ++i) {
    by_class[train[i].label.index()].push_back(i);
  }
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (by_class[c].empty()) {
      throw DataError("cannot resample: class " + std::to_string(c) + " (" +
                      std::string(class_name(ClassLabel(c))) +
                      ") has no training examples");
    }
  }

  Rng rng(seed);
  std::vector<std::size_t> chosen;
  if (mode == ResampleMode::kOverSample) {
    std::size_t target = 0;
    for (const auto& idx : by_class) target = std::max(target, idx.size());
    chosen.resize(train.size());
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    for (const auto& idx : by_class) {
      for (std::size_t k = idx.size(); k < target; ++k) {
        chosen.push_back(idx[rng.uniform_index(idx.size())]);
      }
    }
  } else {
    std::size_t target = train.size();
    for (const auto& idx : by_class) target = std::min(target, idx.size());
    for (auto& idx : by_class) {
      rng.shuffle(std::span(idx));
      chosen.insert(chosen.end(), idx.begin(), idx.begin() + target);
    }
  }
  rng.shuffle(std::span(chosen));

  std::vector<LabeledExample> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(train[i]);
  return out;
}

std::vector<AnnotatedSentence> parse_corpus(std::string_view text) {
  return parse_jsonl(text, sentence_from_json);
}

std::string serialize_corpus(const std::vector<AnnotatedSentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    OrderedJson j;
    j["id"] = s.id;
    j["case_id"] = s.case_id;
    j["text"] = s.text;
    j["decision"] =
        s.decision == CaseDecision::kPetitionerWin ? "win" : "lose";
    j["mentions"] = OrderedJson::array();
    for (const auto& m : s.mentions) {
      OrderedJson mj;
      mj["surface"] = m.surface;
      mj["role"] = m.role == PartyRole::kPetitioner ? "petitioner" : "defendant";
      mj["sentiment"] = m.sentiment.value();
      j["mentions"].push_back(std::move(mj));
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<AnnotatedSentence> read_corpus(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_corpus(text);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_corpus(const std::filesystem::path& path,
                  const std::vector<AnnotatedSentence>& sentences) {
  io::write_file_atomic(path, serialize_corpus(sentences));
}

std::vector<LabeledId> parse_labeled(std::string_view text) {
  return parse_jsonl(text, [](const Json& j) {
    if (!j.is_object()) throw DataError("expected a JSON object");
    const Json& c = require(j, "class");
    if (!c.is_number_integer()) throw DataError("'class' must be 0..3");
    const auto v = c.get<long long>();
    if (v < 0 || v >= static_cast<long long>(kNumClasses)) {
      throw DataError("'class' must be 0..3, got " + std::to_string(v));
    }
    return LabeledId{require_string(j, "id"),
                     ClassLabel(static_cast<std::size_t>(v))};
  });
}

std::string serialize_labeled(const std::vector<LabeledId>& labeled) {
  std::string out;
  for (const auto& l : labeled) {
    OrderedJson j;
    j["id"] = l.id;
    j["class"] = l.label.index();
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabeledId> read_labeled(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_labeled(text);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_labeled(const std::filesystem::path& path,
                   const std::vector<LabeledId>& labeled) {
  io::write_file_atomic(path, serialize_labeled(labeled));
}

}  // namespace casecrit
