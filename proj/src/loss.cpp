#include "casecrit/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "casecrit/model.hpp"

namespace casecrit {

namespace {

constexpr double kMaxProb = 1.0 - 1e-12;

void check_label(std::size_t label, std::size_t num_classes) {
  if (label >= num_classes) {
    throw DataError("label " + std::to_string(label) + " out of range for " +
                    std::to_string(num_classes) + " classes");
  }
}

}  // namespace

void LossConfig::validate() const {
  if (kind == LossKind::kOppositeClassWeighted &&
      !(opposite_class_weight > 0.0 && std::isfinite(opposite_class_weight))) {
    throw std::invalid_argument("opposite_class_weight must be positive");
  }
}

std::string loss_kind_name(LossKind kind) {
  return kind == LossKind::kCrossEntropy ? "cross_entropy"
                                         : "opposite_class_weighted";
}

ClassWeights class_weights(std::size_t label, std::size_t num_classes,
                           double opposite_class_weight) {
  check_label(label, num_classes);
  ClassWeights cw;
  cw.mid = (num_classes + 1) / 2;
  cw.w.resize(num_classes);
  const bool label_low = label < cw.mid;
  for (std::size_t i = 0; i < num_classes; ++i) {
    if (i == label) {
      cw.w[i] = 0.0;
    } else if ((i < cw.mid) != label_low) {
      cw.w[i] = opposite_class_weight;
    } else {
      cw.w[i] = 1.0;
    }
  }
  return cw;
}

LossValue cross_entropy(std::span<const double> probs, std::size_t label) {
  check_label(label, probs.size());
  LossValue out;
  out.loss = -std::log(std::max(probs[label],
                                std::numeric_limits<double>::min()));
  out.grad.assign(probs.begin(), probs.end());
  out.grad[label] -= 1.0;
  return out;
}

LossValue opposite_class_weighted_loss(std::span<const double> probs,
                                       std::size_t label,
                                       const LossConfig& config) {
  const std::size_t n = probs.size();
  const ClassWeights cw =
      class_weights(label, n, config.opposite_class_weight);

  LossValue out;
  out.grad.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = cw.w[i];
    if (w == 0.0) continue;
    if (probs[i] >= 1.0) {
      throw NumericalError("probability of class " + std::to_string(i) +
                           " is exactly 1; log(1 - p) diverges");
    }
    const double p = std::min(probs[i], kMaxProb);
    out.loss -= w * std::log1p(-p);
    // d[-log(1 - p_i)]/dz_j = p_i (delta_ij - p_j) / (1 - p_i)
    const double scale = w * p / (1.0 - p);
    for (std::size_t j = 0; j < n; ++j) {
      out.grad[j] += scale * ((i == j ? 1.0 : 0.0) - probs[j]);
    }
  }
  if (config.literal_sign) {
    out.loss = -out.loss;
    for (double& g : out.grad) g = -g;
  }
  return out;
}

LossValue example_loss(std::span<const double> logits, std::size_t label,
                       const LossConfig& config) {
  const Vector probs = softmax(logits);
  if (config.kind == LossKind::kCrossEntropy) {
    return cross_entropy(probs, label);
  }
  return opposite_class_weighted_loss(probs, label, config);
}

BatchLoss batch_loss(std::span<const Vector> logits,
                     std::span<const std::size_t> labels,
                     const LossConfig& config) {
  if (logits.empty()) throw DataError("batch_loss: empty batch");
  if (logits.size() != labels.size()) {
    throw DataError("batch_loss: " + std::to_string(logits.size()) +
                    " logit rows but " + std::to_string(labels.size()) +
                    " labels");
  }
  const double inv_n = 1.0 / static_cast<double>(logits.size());
  BatchLoss out;
  out.grad.reserve(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) {
    LossValue lv = example_loss(logits[k], labels[k], config);
    out.loss += lv.loss;
    for (double& g : lv.grad) g *= inv_n;
    out.grad.push_back(std::move(lv.grad));
  }
  out.loss *= inv_n;
  return out;
}

}  // namespace casecrit
