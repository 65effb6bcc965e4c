#ifndef CASECRIT_SYNTHETIC_HPP_
#define CASECRIT_SYNTHETIC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "casecrit/core.hpp"

namespace casecrit {

struct SyntheticCorpusSpec {
  // 226/230/687/465 labeled plus 214 neutral: 1822 sentences.
  std::array<std::size_t, kNumClasses> class_counts{226, 230, 687, 465};
  std::size_t neutral_count = 214;
  std::size_t lose_cases = 10;
  std::size_t win_cases = 15;
  // Probability that a decision or impact cue word agrees with the label.
  double cue_fidelity = 0.8;
  std::uint64_t seed = 0;
};

// Annotated sentences whose party sentiments label exactly to
// spec.class_counts (plus spec.neutral_count neutral rows), with text
// carrying noisy lexical cues for decision and impact.
std::vector<AnnotatedSentence> make_synthetic_corpus(
    const SyntheticCorpusSpec& spec);

// Class k is centred at separation * e_k with unit isotropic noise.
std::vector<LabeledExample> make_gaussian_blobs(std::size_t dim,
                                                std::size_t per_class,
                                                double separation,
                                                std::uint64_t seed);

}  // namespace casecrit

#endif  // CASECRIT_SYNTHETIC_HPP_
