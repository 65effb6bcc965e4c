#ifndef CASECRIT_TRAIN_HPP_
#define CASECRIT_TRAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "casecrit/core.hpp"
#include "casecrit/loss.hpp"
#include "casecrit/model.hpp"

namespace casecrit {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adam over one flat parameter block.
class Adam {
 public:
  Adam(std::size_t size, const AdamConfig& config);

  void step(std::span<double> params, std::span<const double> grad);

 private:
  AdamConfig config_;
  Vector m_;
  Vector v_;
  double beta1_pow_ = 1.0;
  double beta2_pow_ = 1.0;
};

struct TrainConfig {
  std::size_t max_epochs = 8;
  std::size_t batch_size = 32;
  AdamConfig adam;
  std::uint64_t seed = 0;  // shuffle stream
  LossConfig loss;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double validation_accuracy = 0.0;

  friend bool operator==(const EpochStats&, const EpochStats&) = default;
};

struct TrainResult {
  LinearHead best_head;
  std::size_t best_epoch = 0;
  std::vector<EpochStats> history;
};

// Trains a randomly initialized head (LinearHead::random with init_seed)
// with mini-batch Adam. After each epoch the full training loss and the
// validation accuracy are recorded; the head from the epoch with the best
// validation accuracy is returned, earliest epoch on ties.
TrainResult train(const std::vector<LabeledExample>& train_set,
                  const std::vector<LabeledExample>& validation_set,
                  std::uint64_t init_seed, const TrainConfig& config);

// Same, starting from the given head.
TrainResult train_from(LinearHead head,
                       const std::vector<LabeledExample>& train_set,
                       const std::vector<LabeledExample>& validation_set,
                       const TrainConfig& config);

// Mean configured loss of head over examples.
double mean_loss(const LinearHead& head,
                 const std::vector<LabeledExample>& examples,
                 const LossConfig& config);

// CSV with header "epoch,train_loss,val_accuracy".
std::string history_csv(const std::vector<EpochStats>& history);

}  // namespace casecrit

#endif  // CASECRIT_TRAIN_HPP_
