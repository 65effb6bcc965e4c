#include "casecrit/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <optional>

#include "casecrit/dataprep.hpp"
#include "casecrit/embed.hpp"
#include "casecrit/eval.hpp"
#include "casecrit/io.hpp"
#include "casecrit/model.hpp"
#include "casecrit/random.hpp"
#include "casecrit/synthetic.hpp"
#include "casecrit/train.hpp"

namespace casecrit {

namespace {

namespace fs = std::filesystem;
using OrderedJson = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Records inputs and outputs of one command and writes manifest.json into
// the output directory once every output exists.
class RunManifest {
 public:
  RunManifest(std::string command, fs::path out_dir)
      : command_(std::move(command)), out_dir_(std::move(out_dir)) {}

  OrderedJson& config() { return config_; }
  OrderedJson& seeds() { return seeds_; }

  // Reads the input and remembers its digest.
  std::string input(const fs::path& path) {
    std::string bytes = io::read_file(path);
    inputs_.push_back({{"path", path.generic_string()},
                       {"sha256", io::sha256_hex(bytes)}});
    return bytes;
  }

  void output(const std::string& name, std::string_view contents) {
    io::write_file_atomic(out_dir_ / name, contents);
    outputs_.push_back(
        {{"file", name}, {"sha256", io::sha256_hex(contents)}});
  }

  void write() const {
    OrderedJson doc;
    doc["tool"] = "casecrit";
    doc["version"] = kToolVersion;
    doc["command"] = command_;
    doc["config"] = config_;
    doc["seeds"] = seeds_;
    doc["inputs"] = inputs_;
    doc["outputs"] = outputs_;
    io::write_file_atomic(out_dir_ / "manifest.json", doc.dump(2) + '\n');
  }

 private:
  std::string command_;
  fs::path out_dir_;
  OrderedJson config_ = OrderedJson::object();
  OrderedJson seeds_ = OrderedJson::object();
  OrderedJson inputs_ = OrderedJson::array();
  OrderedJson outputs_ = OrderedJson::array();
};

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(',', start);
    parts.push_back(s.substr(start, end == std::string_view::npos
                                        ? std::string_view::npos
                                        : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::array<std::size_t, kNumClasses> parse_counts(const std::string& s,
                                                  const char* flag) {
  auto parts = split_commas(s);
  if (parts.size() != kNumClasses) {
    throw UsageError(std::string(flag) + " needs 4 comma-separated counts");
  }
  std::array<std::size_t, kNumClasses> counts{};
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    auto [ptr, ec] = std::from_chars(
        parts[i].data(), parts[i].data() + parts[i].size(), counts[i]);
    if (ec != std::errc() || ptr != parts[i].data() + parts[i].size()) {
      throw UsageError(std::string(flag) + ": bad count '" +
                       std::string(parts[i]) + "'");
    }
  }
  return counts;
}

std::vector<double> parse_weights(const std::string& s) {
  std::vector<double> weights;
  if (s == "none" || s.empty()) return weights;
  for (auto part : split_commas(s)) {
    double w = 0.0;
    try {
      w = io::parse_double(part);
    } catch (const DataError&) {
      throw UsageError("--weights: bad value '" + std::string(part) + "'");
    }
    if (!(w > 0.0)) throw UsageError("--weights: weights must be positive");
    weights.push_back(w);
  }
  return weights;
}

std::string join_counts(const std::array<std::size_t, kNumClasses>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

OrderedJson counts_json(const std::array<std::size_t, kNumClasses>& c) {
  return OrderedJson(std::vector<std::size_t>(c.begin(), c.end()));
}

std::vector<AnnotatedSentence> load_valid_corpus(RunManifest& manifest,
                                                 const fs::path& path) {
  const std::string text = manifest.input(path);
  std::vector<AnnotatedSentence> corpus;
  try {
    corpus = parse_corpus(text);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  const auto violations = validate_dataset(corpus);
  if (!violations.empty()) {
    std::string msg = path.string() + ": " +
                      std::to_string(violations.size()) + " violation(s)";
    for (const auto& v : violations) {
      msg += "\n  " + v.sentence_id + ": " + v.reason;
    }
    throw DataError(msg);
  }
  return corpus;
}

EmbeddingSet load_embeddings(RunManifest& manifest, const fs::path& path) {
  const std::string text = manifest.input(path);
  try {
    return parse_embeddings(text);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<LabeledId> load_labeled(RunManifest& manifest,
                                    const fs::path& path) {
  const std::string text = manifest.input(path);
  try {
    return parse_labeled(text);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

LossConfig make_loss(const std::string& kind, double weight,
                     bool literal_sign) {
  if (kind == "ce") return LossConfig::cross_entropy();
  if (kind == "ocw") {
    if (!(weight > 0.0)) throw UsageError("--weight must be positive");
    LossConfig lc = LossConfig::opposite_class_weighted(weight);
    lc.literal_sign = literal_sign;
    return lc;
  }
  throw UsageError("--loss must be 'ce' or 'ocw'");
}

OrderedJson loss_json(const LossConfig& lc) {
  OrderedJson j;
  j["kind"] = loss_kind_name(lc.kind);
  if (lc.kind == LossKind::kOppositeClassWeighted) {
    j["opposite_class_weight"] = lc.opposite_class_weight;
    j["literal_sign"] = lc.literal_sign;
  }
  return j;
}

OrderedJson train_json(const TrainConfig& tc) {
  OrderedJson j;
  j["max_epochs"] = tc.max_epochs;
  j["batch_size"] = tc.batch_size;
  j["learning_rate"] = tc.adam.learning_rate;
  j["beta1"] = tc.adam.beta1;
  j["beta2"] = tc.adam.beta2;
  j["epsilon"] = tc.adam.epsilon;
  return j;
}

std::string histogram_line(const std::array<std::size_t, kNumClasses>& h) {
  std::string s = "histogram";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    s += ' ' + std::string(class_name(ClassLabel(c))) + '=' +
         std::to_string(h[c]);
  }
  return s;
}

struct TrainFlags {
  std::size_t max_epochs = 8;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;

  void attach(CLI::App* app) {
    app->add_option("--max-epochs", max_epochs, "Epoch cap")
        ->capture_default_str();
    app->add_option("--batch-size", batch_size, "Mini-batch size")
        ->capture_default_str();
    app->add_option("--lr", learning_rate, "Adam learning rate")
        ->capture_default_str();
  }

  TrainConfig config() const {
    TrainConfig tc;
    tc.max_epochs = max_epochs;
    tc.batch_size = batch_size;
    tc.adam.learning_rate = learning_rate;
    return tc;
  }
};

struct SplitFlags {
  std::string validation = "25,25,70,50";
  std::string test = "25,25,70,50";

  void attach(CLI::App* app) {
    app->add_option("--val-counts", validation,
                    "Per-class validation counts (4, comma separated)")
        ->capture_default_str();
    app->add_option("--test-counts", test,
                    "Per-class test counts (4, comma separated)")
        ->capture_default_str();
  }

  SplitSpec spec(std::uint64_t seed) const {
    SplitSpec s;
    s.validation = parse_counts(validation, "--val-counts");
    s.test = parse_counts(test, "--test-counts");
    s.seed = seed;
    return s;
  }
};

// ---------------------------------------------------------------------------

struct SynthCmd {
  fs::path out;
  std::uint64_t seed = 0;
  double fidelity = 0.8;

  void run(std::ostream& os) const {
    fs::create_directories(out);
    RunManifest manifest("synth", out);
    SyntheticCorpusSpec spec;
    spec.seed = seed;
    spec.cue_fidelity = fidelity;
    manifest.config()["cue_fidelity"] = fidelity;
    manifest.config()["class_counts"] = counts_json(spec.class_counts);
    manifest.config()["neutral_count"] = spec.neutral_count;
    manifest.seeds()["corpus"] = seed;
    const auto corpus = make_synthetic_corpus(spec);
    manifest.output("corpus.jsonl", serialize_corpus(corpus));
    manifest.write();
    os << "wrote " << corpus.size() << " sentences to "
       << (out / "corpus.jsonl").string() << '\n';
  }
};

struct PrepareCmd {
  fs::path corpus;
  fs::path out;
  std::uint64_t seed = 0;
  SplitFlags split;

  void run(std::ostream& os) const {
    const SplitSpec spec = split.spec(seed);
    fs::create_directories(out);
    RunManifest manifest("prepare", out);
    manifest.config()["val_counts"] = counts_json(spec.validation);
    manifest.config()["test_counts"] = counts_json(spec.test);
    manifest.seeds()["split"] = seed;

    const auto sentences = load_valid_corpus(manifest, corpus);
    const CorpusLabeling labeling = label_corpus(sentences);

    std::vector<LabeledExample> examples;
    for (const auto& l : labeling.labeled) examples.push_back({l.id, {}, l.label});
    const SplitDataset parts = stratified_split(examples, spec);
    auto ids_of = [](const std::vector<LabeledExample>& xs) {
      std::vector<LabeledId> out;
      for (const auto& x : xs) out.push_back({x.sentence_id, x.label});
      return out;
    };

    std::string excluded;
    for (const auto& id : labeling.excluded_ids) excluded += id + '\n';
    manifest.output("labeled.jsonl", serialize_labeled(labeling.labeled));
    manifest.output("excluded.txt", excluded);
    manifest.output("train.jsonl", serialize_labeled(ids_of(parts.train)));
    manifest.output("validation.jsonl",
                    serialize_labeled(ids_of(parts.validation)));
    manifest.output("test.jsonl", serialize_labeled(ids_of(parts.test)));
    manifest.write();

    os << "sentences " << sentences.size() << '\n'
       << histogram_line(labeling.histogram) << '\n'
       << "excluded " << labeling.excluded_ids.size() << '\n'
       << "train " << join_counts(class_counts(parts.train)) << '\n'
       << "validation " << join_counts(class_counts(parts.validation)) << '\n'
       << "test " << join_counts(class_counts(parts.test)) << '\n';
  }
};

struct EmbedCmd {
  fs::path corpus;
  fs::path out;
  std::string provider = "hash";
  std::size_t dim = kDefaultEmbeddingDim;
  bool dim_given = false;
  fs::path source;
  std::uint64_t seed = 0;

  void run(std::ostream& os) const {
    if (provider != "hash" && provider != "file") {
      throw UsageError("--provider must be 'hash' or 'file'");
    }
    if (provider == "file" && source.empty()) {
      throw UsageError("--provider file requires --source");
    }
    if (dim == 0) throw UsageError("--dim must be positive");
    fs::create_directories(out);
    RunManifest manifest("embed", out);
    manifest.config()["provider"] = provider;
    manifest.seeds()["seed"] = seed;

    const auto sentences = load_valid_corpus(manifest, corpus);
    std::optional<EmbeddingSet> result;
    if (provider == "hash") {
      manifest.config()["dim"] = dim;
      result.emplace(dim);
      for (const auto& s : sentences) {
        const TokenSequence seq = tokenize(s.text);
        if (seq.live_count() == 0) {
          throw DataError("sentence '" + s.id + "' has no tokens to embed");
        }
        result->add(s.id, hash_embed(seq, dim));
      }
    } else {
      const EmbeddingSet src = load_embeddings(manifest, source);
      if (dim_given && src.dim() != dim) {
        throw DataError(source.string() + ": dimension " +
                        std::to_string(src.dim()) + " but --dim " +
                        std::to_string(dim));
      }
      manifest.config()["dim"] = src.dim();
      std::string missing;
      std::size_t missing_count = 0;
      for (const auto& s : sentences) {
        if (!src.contains(s.id)) {
          missing += ' ' + s.id;
          ++missing_count;
        }
      }
      if (missing_count) {
        throw DataError(source.string() + ": " +
                        std::to_string(missing_count) +
                        " corpus id(s) missing:" + missing);
      }
      result.emplace(src.dim());
      for (const auto& s : sentences) result->add(s.id, src.at(s.id));
    }
    manifest.output("embeddings.txt", serialize_embeddings(*result));
    manifest.write();
    os << "embedded " << result->size() << " sentences, dim "
       << result->dim() << '\n';
  }
};

struct TrainCmd {
  fs::path train_path;
  fs::path validation_path;
  fs::path embeddings;
  fs::path out;
  std::string loss = "ocw";
  double weight = 4.0;
  bool literal_sign = false;
  std::string resample = "over";
  std::uint64_t seed = 0;
  TrainFlags flags;

  void run(std::ostream& os) const {
    TrainConfig tc = flags.config();
    tc.loss = make_loss(loss, weight, literal_sign);
    const ResampleMode mode = [&] {
      try {
        return parse_resample_mode(resample);
      } catch (const DataError& e) {
        throw UsageError(e.what());
      }
    }();
    try {
      tc.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    tc.seed = mix_seed(seed, 1000);
    const std::uint64_t init_seed = mix_seed(seed, 1001);
    const std::uint64_t resample_seed = mix_seed(seed, 1);

    fs::create_directories(out);
    RunManifest manifest("train", out);
    manifest.config()["loss"] = loss_json(tc.loss);
    manifest.config()["resample"] = resample_mode_name(mode);
    manifest.config()["train"] = train_json(tc);
    manifest.seeds()["seed"] = seed;
    manifest.seeds()["shuffle"] = tc.seed;
    manifest.seeds()["init"] = init_seed;
    manifest.seeds()["resample"] = resample_seed;

    const auto train_ids = load_labeled(manifest, train_path);
    const auto val_ids = load_labeled(manifest, validation_path);
    const EmbeddingSet emb = load_embeddings(manifest, embeddings);
    const auto train_set = resample_train(join_embeddings(train_ids, emb),
                                          mode, resample_seed);
    const auto val_set = join_embeddings(val_ids, emb);

    const TrainResult result = train(train_set, val_set, init_seed, tc);
    manifest.output("checkpoint.txt",
                    serialize_checkpoint({result.best_head, init_seed, tc.loss}));
    manifest.output("history.csv", history_csv(result.history));
    manifest.write();

    const auto& best = result.history[result.best_epoch - 1];
    char buf[96];
    std::snprintf(buf, sizeof buf, "best epoch %zu, validation accuracy %.2f%%",
                  result.best_epoch, 100.0 * best.validation_accuracy);
    os << "epochs " << result.history.size() << '\n' << buf << '\n';
  }
};

struct EvalCmd {
  fs::path checkpoint;
  fs::path data;
  fs::path embeddings;
  fs::path out;

  void run(std::ostream& os) const {
    fs::create_directories(out);
    RunManifest manifest("eval", out);
    Checkpoint cp = [&] {
      const std::string text = manifest.input(checkpoint);
      try {
        return parse_checkpoint(text);
      } catch (const DataError& e) {
        throw DataError(checkpoint.string() + ": " + e.what());
      }
    }();
    const auto ids = load_labeled(manifest, data);
    const EmbeddingSet emb = load_embeddings(manifest, embeddings);
    if (cp.head.num_classes() != kNumClasses) {
      throw DataError("checkpoint has " +
                      std::to_string(cp.head.num_classes()) +
                      " classes, expected 4");
    }
    const Evaluation ev = evaluate(cp.head, join_embeddings(ids, emb));

    OrderedJson doc;
    doc["examples"] = ev.confusion.total();
    doc["accuracy"] = ev.metrics.accuracy;
    doc["macro_f1"] = ev.metrics.macro_f1;
    OrderedJson per_class = OrderedJson::array();
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      const auto& s = ev.metrics.per_class[c];
      per_class.push_back({{"class", class_name(ClassLabel(c))},
                           {"precision", s.precision},
                           {"recall", s.recall},
                           {"f1", s.f1}});
    }
    doc["per_class"] = per_class;
    OrderedJson confusion = OrderedJson::array();
    for (std::size_t t = 0; t < kNumClasses; ++t) {
      OrderedJson row = OrderedJson::array();
      for (std::size_t p = 0; p < kNumClasses; ++p) {
        row.push_back(ev.confusion.at(t, p));
      }
      confusion.push_back(row);
    }
    doc["confusion"] = confusion;
    manifest.output("metrics.json", doc.dump(2) + '\n');
    manifest.write();

    char buf[64];
    std::snprintf(buf, sizeof buf, "accuracy %.2f\nmacro_f1 %.2f\n",
                  100.0 * ev.metrics.accuracy, 100.0 * ev.metrics.macro_f1);
    os << buf;
  }
};

struct SweepCmd {
  fs::path corpus;
  fs::path embeddings;
  fs::path out;
  std::string weights = "1,2,3,4,5,6,7,8";
  std::string format = "text";
  std::size_t dim = kDefaultEmbeddingDim;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  SplitFlags split;
  TrainFlags flags;

  void run(std::ostream& os) const {
    if (format != "text" && format != "csv" && format != "json" &&
        format != "all") {
      throw UsageError("--format must be text, csv, json or all");
    }
    SweepConfig sc;
    sc.split = split.spec(seed);
    sc.weights = parse_weights(weights);
    sc.train = flags.config();
    sc.seed = seed;
    sc.jobs = jobs;
    try {
      sc.train.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }

    fs::create_directories(out);
    RunManifest manifest("sweep", out);
    manifest.config()["val_counts"] = counts_json(sc.split.validation);
    manifest.config()["test_counts"] = counts_json(sc.split.test);
    manifest.config()["weights"] = sc.weights;
    manifest.config()["train"] = train_json(sc.train);
    manifest.config()["embeddings"] =
        embeddings.empty() ? "hash:" + std::to_string(dim) : "file";
    manifest.seeds()["seed"] = seed;

    const auto sentences = load_valid_corpus(manifest, corpus);
    const CorpusLabeling labeling = label_corpus(sentences);
    std::optional<EmbeddingSet> emb;
    if (embeddings.empty()) {
      emb.emplace(dim);
      for (const auto& s : sentences) {
        if (auto label = assign_class(s, derive_impact(s))) {
          emb->add(s.id, hash_embed_text(s.text, dim));
        }
      }
    } else {
      emb.emplace(load_embeddings(manifest, embeddings));
    }

    const ExperimentReport report = run_sweep(labeling.labeled, *emb, sc);
    const std::string text = report_text(report);
    if (format == "text" || format == "all") manifest.output("report.txt", text);
    if (format == "csv" || format == "all") {
      manifest.output("report.csv", report_csv(report));
    }
    if (format == "json" || format == "all") {
      manifest.output("report.json", report_json(report));
    }
    manifest.write();
    os << text;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Critical sentence classification: data preparation, "
               "embedding, training and evaluation"};
  app.name(args.empty() ? "casecrit" : fs::path(args[0]).filename().string());
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  SynthCmd synth;
  auto* synth_app = app.add_subcommand(
      "synth", "Generate a synthetic annotated corpus");
  synth_app->add_option("--out", synth.out, "Output directory")->required();
  synth_app->add_option("--seed", synth.seed, "Random seed")
      ->capture_default_str();
  synth_app->add_option("--fidelity", synth.fidelity,
                        "Probability that a cue word agrees with the label")
      ->capture_default_str();

  PrepareCmd prepare;
  auto* prepare_app = app.add_subcommand(
      "prepare", "Label a corpus and split it into train/validation/test");
  prepare_app->add_option("--corpus", prepare.corpus, "Corpus JSONL")
      ->required();
  prepare_app->add_option("--out", prepare.out, "Output directory")
      ->required();
  prepare_app->add_option("--seed", prepare.seed, "Split seed")
      ->capture_default_str();
  prepare.split.attach(prepare_app);

  EmbedCmd embed;
  auto* embed_app =
      app.add_subcommand("embed", "Write sentence embeddings for a corpus");
  embed_app->add_option("--corpus", embed.corpus, "Corpus JSONL")->required();
  embed_app->add_option("--out", embed.out, "Output directory")->required();
  embed_app->add_option("--provider", embed.provider, "hash or file")
      ->capture_default_str();
  auto* dim_opt = embed_app->add_option("--dim", embed.dim,
                                        "Embedding dimension")
                      ->capture_default_str();
  embed_app->add_option("--source", embed.source,
                        "Embedding file for --provider file");
  embed_app->add_option("--seed", embed.seed,
                        "Recorded in the manifest; embedding is deterministic");

  TrainCmd trainc;
  auto* train_app = app.add_subcommand("train", "Train a classification head");
  train_app->add_option("--train", trainc.train_path, "Train labels JSONL")
      ->required();
  train_app->add_option("--validation", trainc.validation_path,
                        "Validation labels JSONL")
      ->required();
  train_app->add_option("--embeddings", trainc.embeddings, "Embedding file")
      ->required();
  train_app->add_option("--out", trainc.out, "Output directory")->required();
  train_app->add_option("--loss", trainc.loss, "ce or ocw")
      ->capture_default_str();
  train_app->add_option("--weight", trainc.weight, "Opposite class weight")
      ->capture_default_str();
  train_app->add_flag("--literal-sign", trainc.literal_sign,
                      "Use the un-negated log(1 - p) accumulation");
  train_app->add_option("--resample", trainc.resample, "none, over or under")
      ->capture_default_str();
  train_app->add_option("--seed", trainc.seed, "Random seed")
      ->capture_default_str();
  trainc.flags.attach(train_app);

  EvalCmd evalc;
  auto* eval_app = app.add_subcommand("eval", "Score a checkpoint");
  eval_app->add_option("--checkpoint", evalc.checkpoint, "Checkpoint file")
      ->required();
  eval_app->add_option("--data", evalc.data, "Labels JSONL")->required();
  eval_app->add_option("--embeddings", evalc.embeddings, "Embedding file")
      ->required();
  eval_app->add_option("--out", evalc.out, "Output directory")->required();

  SweepCmd sweep;
  auto* sweep_app = app.add_subcommand(
      "sweep", "Cross entropy and opposite-class-weight sweep");
  sweep_app->add_option("--corpus", sweep.corpus, "Corpus JSONL")->required();
  sweep_app->add_option("--embeddings", sweep.embeddings,
                        "Embedding file (default: hash embedder)");
  sweep_app->add_option("--out", sweep.out, "Output directory")->required();
  sweep_app->add_option("--weights", sweep.weights,
                        "Comma-separated weights, or 'none'")
      ->capture_default_str();
  sweep_app->add_option("--format", sweep.format, "text, csv, json or all")
      ->capture_default_str();
  sweep_app->add_option("--dim", sweep.dim, "Hash embedding dimension")
      ->capture_default_str();
  sweep_app->add_option("--jobs", sweep.jobs, "Parallel cells")
      ->capture_default_str();
  sweep_app->add_option("--seed", sweep.seed, "Random seed")
      ->capture_default_str();
  sweep.split.attach(sweep_app);
  sweep.flags.attach(sweep_app);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("casecrit");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth_app) synth.run(out);
    if (*prepare_app) prepare.run(out);
    if (*embed_app) {
      embed.dim_given = dim_opt->count() > 0;
      embed.run(out);
    }
    if (*train_app) trainc.run(out);
    if (*eval_app) evalc.run(out);
    if (*sweep_app) sweep.run(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace casecrit
