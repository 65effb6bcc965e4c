#include "casecrit/eval.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "casecrit/random.hpp"

namespace casecrit {

namespace {

std::string pct(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

double round2(double value) { return std::round(value * 100.0) / 100.0; }

std::string weight_label(const ReportRow& row) {
  if (!row.weight) return "N/A";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", *row.weight);
  return buf;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes)
    : n_(num_classes), counts_(num_classes * num_classes, 0) {}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted,
                          std::size_t count) {
  if (truth >= n_ || predicted >= n_) {
    throw DataError("confusion matrix index out of range");
  }
  counts_[truth * n_ + predicted] += count;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (std::size_t c : counts_) t += c;
  return t;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

Metrics metrics_from_confusion(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw DataError("cannot score an empty confusion matrix");
  const std::size_t n = cm.num_classes();
  Metrics m;
  m.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
  m.per_class.resize(n);
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t predicted = 0;
    std::size_t actual = 0;
    for (std::size_t k = 0; k < n; ++k) {
      predicted += cm.at(k, c);
      actual += cm.at(c, k);
    }
    const double tp = static_cast<double>(cm.at(c, c));
    ClassScores& s = m.per_class[c];
    s.precision = predicted ? tp / static_cast<double>(predicted) : 0.0;
    s.recall = actual ? tp / static_cast<double>(actual) : 0.0;
    const double pr = s.precision + s.recall;
    s.f1 = pr > 0.0 ? 2.0 * s.precision * s.recall / pr : 0.0;
    f1_sum += s.f1;
  }
  m.macro_f1 = f1_sum / static_cast<double>(n);
  return m;
}

Evaluation evaluate(const LinearHead& head,
                    const std::vector<LabeledExample>& examples) {
  if (examples.empty()) throw DataError("evaluate: no examples");
  ConfusionMatrix cm(head.num_classes());
  for (const auto& e : examples) {
    cm.add(e.label.index(), predict(head, e.embedding).index());
  }
  return {metrics_from_confusion(cm), cm};
}

double accuracy(const LinearHead& head,
                const std::vector<LabeledExample>& examples) {
  if (examples.empty()) throw DataError("accuracy: no examples");
  std::size_t correct = 0;
  for (const auto& e : examples) {
    correct += predict(head, e.embedding) == e.label;
  }
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

std::vector<LabeledExample> join_embeddings(
    const std::vector<LabeledId>& labeled, const EmbeddingSet& embeddings) {
  std::vector<std::string> missing;
  std::vector<LabeledExample> out;
  out.reserve(labeled.size());
  for (const auto& l : labeled) {
    if (!embeddings.contains(l.id)) {
      missing.push_back(l.id);
      continue;
    }
    out.push_back({l.id, embeddings.at(l.id), l.label});
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) +
                      " sentence id(s) have no embedding:";
    for (const auto& id : missing) msg += ' ' + id;
    throw DataError(msg);
  }
  return out;
}

ExperimentReport run_sweep(const std::vector<LabeledId>& labeled,
                           const EmbeddingSet& embeddings,
                           const SweepConfig& config) {
  const SplitDataset split =
      stratified_split(join_embeddings(labeled, embeddings), config.split);

  std::vector<std::vector<LabeledExample>> resampled;
  for (std::size_t m = 0; m < config.sampling.size(); ++m) {
    resampled.push_back(resample_train(split.train, config.sampling[m],
                                       mix_seed(config.seed, 1 + m)));
  }

  std::vector<LossConfig> losses{LossConfig::cross_entropy()};
  for (double w : config.weights) {
    losses.push_back(LossConfig::opposite_class_weighted(w));
  }
  for (const auto& l : losses) l.validate();
  config.train.validate();

  const std::size_t num_modes = config.sampling.size();
  const std::size_t num_cells = losses.size() * num_modes;
  ExperimentReport report;
  report.rows.resize(num_cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t li = cell / num_modes;
    const std::size_t mi = cell % num_modes;
    TrainConfig tc = config.train;
    tc.loss = losses[li];
    tc.seed = mix_seed(config.seed, 1000 + 2 * cell);
    const TrainResult tr =
        train(resampled[mi], split.validation,
              mix_seed(config.seed, 1001 + 2 * cell), tc);
    const Evaluation ev = evaluate(tr.best_head, split.test);
    ReportRow& row = report.rows[cell];
    row.loss = tc.loss.kind;
    if (tc.loss.kind == LossKind::kOppositeClassWeighted) {
      row.weight = tc.loss.opposite_class_weight;
    }
    row.sampling = config.sampling[mi];
    row.accuracy_pct = 100.0 * ev.metrics.accuracy;
    row.macro_f1_pct = 100.0 * ev.metrics.macro_f1;
    row.best_epoch = tr.best_epoch;
  };

  const std::size_t jobs = std::max<std::size_t>(1, config.jobs);
  if (jobs == 1) {
    for (std::size_t cell = 0; cell < num_cells; ++cell) run_cell(cell);
    return report;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < std::min(jobs, num_cells); ++t) {
    workers.emplace_back([&] {
      for (std::size_t cell = next++; cell < num_cells; cell = next++) {
        try {
          run_cell(cell);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::string out = "loss,weight,sampling,accuracy_pct,macro_f1_pct\n";
  for (const auto& r : report.rows) {
    out += loss_kind_name(r.loss) + ',' + weight_label(r) + ',' +
           std::string(resample_mode_name(r.sampling)) + ',' +
           pct(r.accuracy_pct) + ',' + pct(r.macro_f1_pct) + '\n';
  }
  return out;
}

std::string report_json(const ExperimentReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json j;
    j["loss"] = loss_kind_name(r.loss);
    j["weight"] = r.weight ? nlohmann::ordered_json(*r.weight) : nullptr;
    j["sampling"] = resample_mode_name(r.sampling);
    j["accuracy_pct"] = round2(r.accuracy_pct);
    j["macro_f1_pct"] = round2(r.macro_f1_pct);
    j["best_epoch"] = r.best_epoch;
    rows.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + '\n';
}

std::string report_text(const ExperimentReport& report) {
  char line[128];
  std::snprintf(line, sizeof line, "%-24s %6s %8s %9s %9s\n", "loss",
                "weight", "sampling", "acc(%)", "F1(%)");
  std::string out = line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-24s %6s %8s %9s %9s\n",
                  loss_kind_name(r.loss).c_str(), weight_label(r).c_str(),
                  std::string(resample_mode_name(r.sampling)).c_str(),
                  pct(r.accuracy_pct).c_str(), pct(r.macro_f1_pct).c_str());
    out += line;
  }
  return out;
}

}  // namespace casecrit
