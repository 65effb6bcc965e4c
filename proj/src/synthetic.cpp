#include "casecrit/synthetic.hpp"

#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "casecrit/random.hpp"

namespace casecrit {

namespace {

constexpr std::string_view kFiller[] = {
    "the",      "court",    "held",      "that",      "in",
    "this",     "case",     "statute",   "under",     "section",
    "evidence", "trial",    "record",    "judgment",  "appeal",
    "counsel",  "argued",   "question",  "whether",   "federal",
    "state",    "law",      "claim",     "motion",    "district",
    "circuit",  "opinion",  "review",    "facts",     "respect"};
constexpr std::string_view kLoseCues[] = {
    "affirmed", "denied", "dismissed", "rejected", "upheld", "barred"};
constexpr std::string_view kWinCues[] = {
    "reversed", "vacated", "remanded", "granted", "overturned", "sustained"};
constexpr std::string_view kNegativeCues[] = {
    "guilty", "violated", "failed", "unlawful", "seized", "concealed"};
constexpr std::string_view kPositiveCues[] = {
    "entitled", "protected", "credible", "lawful", "diligent", "innocent"};
constexpr std::string_view kPetitioners[] = {"lee", "smith", "garcia",
                                             "walker", "nguyen"};
constexpr std::string_view kDefendants[] = {"officials", "state", "agency",
                                            "respondent", "government"};

template <std::size_t N>
std::string_view pick(Rng& rng, const std::string_view (&words)[N]) {
  return words[rng.uniform_index(N)];
}

template <std::size_t N, std::size_t M>
std::string_view cue(Rng& rng, double fidelity,
                     const std::string_view (&agree)[N],
                     const std::string_view (&disagree)[M]) {
  return rng.uniform01() < fidelity ? pick(rng, agree) : pick(rng, disagree);
}

std::string render(std::span<const std::string> words) {
  std::string text;
  for (const auto& w : words) {
    if (!text.empty()) text += ' ';
    text += w;
  }
  text += '.';
  if (!text.empty()) text[0] = static_cast<char>(text[0] - 'a' + 'A');
  return text;
}

PartyMention mention(Rng& rng, PartyRole role, int sentiment) {
  const std::string_view name = role == PartyRole::kPetitioner
                                    ? pick(rng, kPetitioners)
                                    : pick(rng, kDefendants);
  return {std::string(name), role, Sentiment(sentiment)};
}

// Mentions whose derived impact has sign `s` (+1 / -1).
std::vector<PartyMention> polar_mentions(Rng& rng, int s) {
  std::vector<PartyMention> m;
  switch (rng.uniform_index(4)) {
    case 0:
      m.push_back(mention(rng, PartyRole::kPetitioner, s));
      break;
    case 1:
      m.push_back(mention(rng, PartyRole::kDefendant, -s));
      if (rng.uniform_index(2)) {
        m.push_back(mention(rng, PartyRole::kDefendant, -s));
      }
      break;
    case 2:
      m.push_back(mention(rng, PartyRole::kPetitioner, s));
      m.push_back(mention(rng, PartyRole::kDefendant, -s));
      break;
    default:
      m.push_back(mention(rng, PartyRole::kPetitioner, s));
      m.push_back(mention(rng, PartyRole::kPetitioner, s));
      m.push_back(mention(rng, PartyRole::kPetitioner, -s));
      break;
  }
  return m;
}

std::vector<PartyMention> neutral_mentions(Rng& rng) {
  std::vector<PartyMention> m;
  switch (rng.uniform_index(3)) {
    case 0:
      break;
    case 1:
      m.push_back(mention(rng, PartyRole::kPetitioner, 0));
      m.push_back(mention(rng, PartyRole::kDefendant, 0));
      break;
    default:
      m.push_back(mention(rng, PartyRole::kPetitioner, 1));
      m.push_back(mention(rng, PartyRole::kPetitioner, -1));
      break;
  }
  return m;
}

}  // namespace

std::vector<AnnotatedSentence> make_synthetic_corpus(
    const SyntheticCorpusSpec& spec) {
  if (spec.lose_cases == 0 || spec.win_cases == 0) {
    throw DataError("synthetic corpus needs at least one case per decision");
  }
  Rng rng(spec.seed);

  // Slot value: class index, or kNumClasses for a neutral sentence.
  std::vector<std::size_t> slots;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    slots.insert(slots.end(), spec.class_counts[c], c);
  }
  slots.insert(slots.end(), spec.neutral_count, kNumClasses);
  rng.shuffle(std::span(slots));

  const std::size_t num_cases = spec.lose_cases + spec.win_cases;
  auto case_name = [](std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "case%02zu", i);
    return std::string(buf);
  };

  std::vector<AnnotatedSentence> corpus;
  corpus.reserve(slots.size());
  for (std::size_t n = 0; n < slots.size(); ++n) {
    const std::size_t slot = slots[n];
    AnnotatedSentence s;
    char id[32];
    std::snprintf(id, sizeof id, "s%05zu", n);
    s.id = id;

    std::size_t case_index = 0;
    if (slot < kNumClasses) {
      const bool win = slot >= 2;
      case_index = win ? spec.lose_cases + rng.uniform_index(spec.win_cases)
                       : rng.uniform_index(spec.lose_cases);
    } else {
      case_index = rng.uniform_index(num_cases);
    }
    s.case_id = case_name(case_index);
    const bool win = case_index >= spec.lose_cases;
    s.decision = win ? CaseDecision::kPetitionerWin
                     : CaseDecision::kPetitionerLose;

    std::vector<std::string> words;
    const std::size_t filler = 8 + rng.uniform_index(8);
    for (std::size_t k = 0; k < filler; ++k) {
      words.emplace_back(pick(rng, kFiller));
    }
    const double f = spec.cue_fidelity;
    for (int k = 0; k < 2; ++k) {
      words.emplace_back(win ? cue(rng, f, kWinCues, kLoseCues)
                             : cue(rng, f, kLoseCues, kWinCues));
    }
    if (slot < kNumClasses) {
      const bool positive = slot % 2 == 1;
      s.mentions = polar_mentions(rng, positive ? 1 : -1);
      for (int k = 0; k < 2; ++k) {
        words.emplace_back(positive
                               ? cue(rng, f, kPositiveCues, kNegativeCues)
                               : cue(rng, f, kNegativeCues, kPositiveCues));
      }
    } else {
      s.mentions = neutral_mentions(rng);
      words.emplace_back(pick(rng, kFiller));
    }
    for (const auto& m : s.mentions) words.push_back(m.surface);
    rng.shuffle(std::span(words));
    s.text = render(words);
    corpus.push_back(std::move(s));
  }
  return corpus;
}

std::vector<LabeledExample> make_gaussian_blobs(std::size_t dim,
                                                std::size_t per_class,
                                                double separation,
                                                std::uint64_t seed) {
  if (dim < kNumClasses) {
    throw DataError("blob dimension must be at least the class count");
  }
  Rng rng(seed);
  std::vector<LabeledExample> out;
  out.reserve(kNumClasses * per_class);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      Vector x(dim);
      for (double& v : x) v = rng.normal();
      x[c] += separation;
      out.push_back({"blob" + std::to_string(c) + "_" + std::to_string(i),
                     std::move(x), ClassLabel(c)});
    }
  }
  return out;
}

}  // namespace casecrit
