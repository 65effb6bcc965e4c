#ifndef CASECRIT_LOSS_HPP_
#define CASECRIT_LOSS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "casecrit/core.hpp"

namespace casecrit {

enum class LossKind { kCrossEntropy, kOppositeClassWeighted };

struct LossConfig {
  LossKind kind = LossKind::kCrossEntropy;
  double opposite_class_weight = 1.0;
  // Accumulate +W*log(1-p) as written in the original algorithm listing
  // instead of the default -W*log(1-p). Kept only for auditing; minimizing
  // it pushes probability mass towards the opposite classes.
  bool literal_sign = false;

  static LossConfig cross_entropy() { return {}; }
  static LossConfig opposite_class_weighted(double weight) {
    return {LossKind::kOppositeClassWeighted, weight, false};
  }

  // Throws std::invalid_argument for a non-positive or non-finite weight.
  void validate() const;

  friend bool operator==(const LossConfig&, const LossConfig&) = default;
};

std::string loss_kind_name(LossKind kind);

struct ClassWeights {
  std::vector<double> w;
  std::size_t mid = 0;
};

// Per-class multipliers for one label: 0 on the label, 1 on the rest of its
// polarity half, opposite_class_weight on the other half. The halves split
// at mid = (num_classes + 1) / 2.
ClassWeights class_weights(std::size_t label, std::size_t num_classes,
                           double opposite_class_weight);

struct LossValue {
  double loss = 0.0;
  Vector grad;  // d loss / d logits
};

// -log p[label]; gradient p - onehot(label).
LossValue cross_entropy(std::span<const double> probs, std::size_t label);

// -sum_i W_i log(1 - p_i) with W from class_weights.
// d/dz_j = sum_i W_i p_i (delta_ij - p_j) / (1 - p_i).
// Throws NumericalError if a weighted class has probability exactly 1.
LossValue opposite_class_weighted_loss(std::span<const double> probs,
                                       std::size_t label,
                                       const LossConfig& config);

// Dispatches on config.kind; probs are computed from logits internally.
LossValue example_loss(std::span<const double> logits, std::size_t label,
                       const LossConfig& config);

struct BatchLoss {
  double loss = 0.0;        // mean over the batch
  std::vector<Vector> grad;  // grad[k] = d(mean loss) / d logits[k]
};

// Throws DataError for an empty batch or a size mismatch.
BatchLoss batch_loss(std::span<const Vector> logits,
                     std::span<const std::size_t> labels,
                     const LossConfig& config);

}  // namespace casecrit

#endif  // CASECRIT_LOSS_HPP_
