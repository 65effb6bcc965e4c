#ifndef CASECRIT_EVAL_HPP_
#define CASECRIT_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casecrit/core.hpp"
#include "casecrit/dataprep.hpp"
#include "casecrit/embed.hpp"
#include "casecrit/loss.hpp"
#include "casecrit/model.hpp"
#include "casecrit/train.hpp"

namespace casecrit {

// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes);

  void add(std::size_t truth, std::size_t predicted, std::size_t count = 1);

  std::size_t num_classes() const { return n_; }
  std::size_t at(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * n_ + predicted];
  }
  std::size_t total() const;
  std::size_t trace() const;

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> counts_;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct Metrics {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::vector<ClassScores> per_class;
};

// Precision, recall and F1 are 0 whenever their denominator is 0, and the
// macro average runs over every class, present or not. Throws DataError for
// an empty matrix.
Metrics metrics_from_confusion(const ConfusionMatrix& cm);

struct Evaluation {
  Metrics metrics;
  ConfusionMatrix confusion;
};

// Throws DataError for an empty example list.
Evaluation evaluate(const LinearHead& head,
                    const std::vector<LabeledExample>& examples);

double accuracy(const LinearHead& head,
                const std::vector<LabeledExample>& examples);

// Joins labels with embeddings, keeping the order of `labeled`. Throws
// DataError listing every id without an embedding.
std::vector<LabeledExample> join_embeddings(
    const std::vector<LabeledId>& labeled, const EmbeddingSet& embeddings);

struct ReportRow {
  LossKind loss = LossKind::kCrossEntropy;
  std::optional<double> weight;  // unset for cross entropy
  ResampleMode sampling = ResampleMode::kOverSample;
  double accuracy_pct = 0.0;
  double macro_f1_pct = 0.0;
  std::size_t best_epoch = 0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
};

struct SweepConfig {
  SplitSpec split;                                  // split.seed drives the split
  std::vector<double> weights{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<ResampleMode> sampling{ResampleMode::kOverSample,
                                     ResampleMode::kUnderSample};
  TrainConfig train;  // loss and seed are set per cell
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

// One cell per (loss config, sampling mode): cross entropy first, then each
// opposite-class weight in order; sampling modes vary fastest. Every cell
// splits identically, resamples from a per-mode stream and trains from
// per-cell streams, so the report does not depend on `jobs`.
ExperimentReport run_sweep(const std::vector<LabeledId>& labeled,
                           const EmbeddingSet& embeddings,
                           const SweepConfig& config);

std::string report_csv(const ExperimentReport& report);
std::string report_json(const ExperimentReport& report);
std::string report_text(const ExperimentReport& report);

}  // namespace casecrit

#endif  // CASECRIT_EVAL_HPP_
