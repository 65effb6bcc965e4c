#include "casecrit/train.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "casecrit/eval.hpp"
#include "casecrit/io.hpp"
#include "casecrit/random.hpp"

namespace casecrit {

namespace {

void check_set(const std::vector<LabeledExample>& set, std::size_t dim,
               const char* name) {
  if (set.empty()) throw DataError(std::string(name) + " set is empty");
  for (const auto& e : set) {
    if (e.embedding.size() != dim) {
      throw DataError(std::string(name) + " example '" + e.sentence_id +
                      "' has dimension " + std::to_string(e.embedding.size()) +
                      ", expected " + std::to_string(dim));
    }
  }
}

}  // namespace

Adam::Adam(std::size_t size, const AdamConfig& config)
    : config_(config), m_(size, 0.0), v_(size, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grad) {
  beta1_pow_ *= config_.beta1;
  beta2_pow_ *= config_.beta2;
  const double c1 = 1.0 - beta1_pow_;
  const double c2 = 1.0 - beta2_pow_;
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * grad[i];
    v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * grad[i] * grad[i];
    params[i] -= config_.learning_rate * (m_[i] / c1) /
                 (std::sqrt(v_[i] / c2) + config_.epsilon);
  }
}

void TrainConfig::validate() const {
  if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (!(adam.learning_rate > 0.0) || !std::isfinite(adam.learning_rate)) {
    throw std::invalid_argument("learning_rate must be > 0");
  }
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) ||
      !(adam.beta2 >= 0.0 && adam.beta2 < 1.0) || !(adam.epsilon > 0.0)) {
    throw std::invalid_argument("invalid Adam hyper-parameters");
  }
  loss.validate();
}

double mean_loss(const LinearHead& head,
                 const std::vector<LabeledExample>& examples,
                 const LossConfig& config) {
  if (examples.empty()) throw DataError("mean_loss: no examples");
  double total = 0.0;
  for (const auto& e : examples) {
    total += example_loss(forward(head, e.embedding), e.label.index(), config)
                 .loss;
  }
  return total / static_cast<double>(examples.size());
}

TrainResult train(const std::vector<LabeledExample>& train_set,
                  const std::vector<LabeledExample>& validation_set,
                  std::uint64_t init_seed, const TrainConfig& config) {
  if (train_set.empty()) throw DataError("train set is empty");
  return train_from(LinearHead::random(kNumClasses,
                                       train_set.front().embedding.size(),
                                       init_seed),
                    train_set, validation_set, config);
}

TrainResult train_from(LinearHead head,
                       const std::vector<LabeledExample>& train_set,
                       const std::vector<LabeledExample>& validation_set,
                       const TrainConfig& config) {
  config.validate();
  const std::size_t dim = head.dim();
  const std::size_t classes = head.num_classes();
  check_set(train_set, dim, "train");
  check_set(validation_set, dim, "validation");

  Adam weight_opt(classes * dim, config.adam);
  Adam bias_opt(classes, config.adam);
  Vector weight_grad(classes * dim);
  Vector bias_grad(classes);

  Rng rng(config.seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result{head, 0, {}};
  double best_accuracy = -1.0;

  std::vector<Vector> logits;
  std::vector<std::size_t> labels;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      logits.clear();
      labels.clear();
      for (std::size_t b = start; b < end; ++b) {
        const auto& e = train_set[order[b]];
        logits.push_back(forward(head, e.embedding));
        labels.push_back(e.label.index());
      }
      const BatchLoss bl = batch_loss(logits, labels, config.loss);
      if (!std::isfinite(bl.loss)) {
        throw NumericalError("non-finite training loss in epoch " +
                             std::to_string(epoch));
      }

      std::fill(weight_grad.begin(), weight_grad.end(), 0.0);
      std::fill(bias_grad.begin(), bias_grad.end(), 0.0);
      for (std::size_t b = start; b < end; ++b) {
        const Vector& x = train_set[order[b]].embedding;
        const Vector& g = bl.grad[b - start];
        for (std::size_t c = 0; c < classes; ++c) {
          bias_grad[c] += g[c];
          double* row = weight_grad.data() + c * dim;
          for (std::size_t k = 0; k < dim; ++k) row[k] += g[c] * x[k];
        }
      }
      weight_opt.step(head.weights(), weight_grad);
      bias_opt.step(head.bias(), bias_grad);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = mean_loss(head, train_set, config.loss);
    stats.validation_accuracy = accuracy(head, validation_set);
    result.history.push_back(stats);
    if (stats.validation_accuracy > best_accuracy) {
      best_accuracy = stats.validation_accuracy;
      result.best_head = head;
      result.best_epoch = epoch;
    }
  }
  return result;
}

std::string history_csv(const std::vector<EpochStats>& history) {
  std::string out = "epoch,train_loss,val_accuracy\n";
  for (const auto& h : history) {
    out += std::to_string(h.epoch) + ',' + io::format_double(h.train_loss) +
           ',' + io::format_double(h.validation_accuracy) + '\n';
  }
  return out;
}

}  // namespace casecrit
