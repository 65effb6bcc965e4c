#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>

#include "casecrit/dataprep.hpp"
#include "casecrit/embed.hpp"
#include "casecrit/model.hpp"
#include "cli_helpers.hpp"

namespace casecrit {
namespace {

using testutil::run;
using testutil::snapshot;
using testutil::TempDir;

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(Cli, NoSubcommandIsUsageError) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, PrepareReportsHistogramAndExclusions) {
  TempDir dir("prepare");
  ASSERT_EQ(run({"synth", "--out", dir / "syn", "--seed", "1"}).code, 0);
  const auto r =
      run({"prepare", "--corpus", dir / "syn/corpus.jsonl", "--out", dir / "p"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("lose_negative=226"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("lose_positive=230"), std::string::npos);
  EXPECT_NE(r.out.find("win_negative=687"), std::string::npos);
  EXPECT_NE(r.out.find("win_positive=465"), std::string::npos);
  EXPECT_NE(r.out.find("excluded 214"), std::string::npos);
  EXPECT_EQ(read_labeled(dir / "p/labeled.jsonl").size(), 1608u);
  EXPECT_EQ(read_labeled(dir / "p/validation.jsonl").size(), 170u);
  EXPECT_EQ(read_labeled(dir / "p/test.jsonl").size(), 170u);
  EXPECT_EQ(read_labeled(dir / "p/train.jsonl").size(), 1268u);
}

TEST(Cli, MissingCorpusIsDataErrorNamingPath) {
  TempDir dir("missing");
  const std::string missing = dir / "nope.jsonl";
  const auto r = run({"prepare", "--corpus", missing, "--out", dir / "p"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
}

TEST(Cli, InvalidCorpusIsDataError) {
  TempDir dir("invalid");
  io::write_file_atomic(dir.path() / "c.jsonl",
                        "{\"id\":\"a\",\"case_id\":\"k\",\"text\":\"\","
                        "\"decision\":\"win\",\"mentions\":[]}\n");
  const auto r = run({"prepare", "--corpus", dir / "c.jsonl", "--out", dir / "p"});
  EXPECT_EQ(r.code, kExitData) << r.err;
}

TEST(Cli, RerunsAreByteIdenticalAndManifestHasDigests) {
  TempDir dir("rerun");
  ASSERT_EQ(run({"synth", "--out", dir / "syn", "--seed", "4"}).code, 0);
  for (const char* name : {"a", "b"}) {
    ASSERT_EQ(run({"prepare", "--corpus", dir / "syn/corpus.jsonl", "--out",
                   dir / name, "--seed", "9"})
                  .code,
              0);
  }
  const auto a = snapshot(dir.path() / "a");
  EXPECT_EQ(a, snapshot(dir.path() / "b"));
  const auto manifest = nlohmann::json::parse(a.at("manifest.json"));
  EXPECT_EQ(manifest["command"], "prepare");
  ASSERT_EQ(manifest["inputs"].size(), 1u);
  EXPECT_EQ(manifest["inputs"][0]["sha256"],
            io::sha256_hex(io::read_file(dir / "syn/corpus.jsonl")));
  EXPECT_EQ(manifest["outputs"].size(), 5u);
  EXPECT_EQ(manifest["seeds"]["split"], 9);
}

TEST(Cli, EmbedHashProvider) {
  TempDir dir("embed");
  std::vector<AnnotatedSentence> corpus(2);
  corpus[0] = {"s1", "k", "The officials searched the house.",
               CaseDecision::kPetitionerWin, {}};
  corpus[1] = {"s2", "k", "The court reversed.", CaseDecision::kPetitionerWin,
               {}};
  write_corpus(dir.path() / "c.jsonl", corpus);
  const auto r = run({"embed", "--corpus", dir / "c.jsonl", "--out", dir / "e"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto set = read_embeddings(dir / "e/embeddings.txt");
  EXPECT_EQ(set.dim(), 768u);
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.at("s2"), hash_embed_text("The court reversed.", 768));
}

TEST(Cli, EmbedFileProviderListsMissingIds) {
  TempDir dir("embedfile");
  std::vector<AnnotatedSentence> corpus(3);
  corpus[0] = {"s1", "k", "a", CaseDecision::kPetitionerWin, {}};
  corpus[1] = {"s2", "k", "b", CaseDecision::kPetitionerWin, {}};
  corpus[2] = {"s3", "k", "c", CaseDecision::kPetitionerWin, {}};
  write_corpus(dir.path() / "c.jsonl", corpus);
  EmbeddingSet source(2);
  source.add("s2", {1, 2});
  write_embeddings(dir.path() / "src.txt", source);
  const auto r = run({"embed", "--corpus", dir / "c.jsonl", "--out",
                      dir / "e", "--provider", "file", "--source",
                      dir / "src.txt"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("s1"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("s3"), std::string::npos) << r.err;

  const auto bad = run({"embed", "--corpus", dir / "c.jsonl", "--out",
                        dir / "e", "--provider", "magic"});
  EXPECT_EQ(bad.code, kExitUsage);
}

struct PipelineDirs {
  TempDir dir{"pipeline"};
  PipelineDirs() {
    EXPECT_EQ(run({"synth", "--out", dir / "syn", "--seed", "2"}).code, 0);
    EXPECT_EQ(run({"prepare", "--corpus", dir / "syn/corpus.jsonl", "--out",
                   dir / "p"})
                  .code,
              0);
    EXPECT_EQ(run({"embed", "--corpus", dir / "syn/corpus.jsonl", "--out",
                   dir / "e", "--dim", "64"})
                  .code,
              0);
  }
};

TEST(Cli, TrainRespectsEpochCapAndEvalScores) {
  PipelineDirs p;
  auto& dir = p.dir;
  const auto r = run({"train", "--train", dir / "p/train.jsonl",
                      "--validation", dir / "p/validation.jsonl",
                      "--embeddings", dir / "e/embeddings.txt", "--out",
                      dir / "t", "--max-epochs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string history = io::read_file(dir / "t/history.csv");
  EXPECT_EQ(line_count(history), 4u);
  const auto cp = read_checkpoint(dir / "t/checkpoint.txt");
  EXPECT_EQ(cp.head.dim(), 64u);
  EXPECT_EQ(cp.loss.kind, LossKind::kOppositeClassWeighted);
  EXPECT_EQ(cp.loss.opposite_class_weight, 4.0);

  const auto e = run({"eval", "--checkpoint", dir / "t/checkpoint.txt",
                      "--data", dir / "p/test.jsonl", "--embeddings",
                      dir / "e/embeddings.txt", "--out", dir / "v"});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(e.out.rfind("accuracy ", 0), 0u) << e.out;
  const auto metrics =
      nlohmann::json::parse(io::read_file(dir / "v/metrics.json"));
  EXPECT_EQ(metrics["per_class"].size(), 4u);

  const auto bad = run({"train", "--train", dir / "p/train.jsonl",
                        "--validation", dir / "p/validation.jsonl",
                        "--embeddings", dir / "e/embeddings.txt", "--out",
                        dir / "t2", "--weight", "0"});
  EXPECT_EQ(bad.code, kExitUsage);
}

TEST(Cli, EvalOfPerfectHeadIsHundredPercent) {
  TempDir dir("perfect");
  EmbeddingSet emb(4);
  std::vector<LabeledId> labeled;
  for (std::size_t c = 0; c < 4; ++c) {
    for (int i = 0; i < 3; ++i) {
      const std::string id = "x" + std::to_string(c) + "_" + std::to_string(i);
      Vector v(4, 0.0);
      v[c] = 1.0 + i;
      emb.add(id, v);
      labeled.push_back({id, ClassLabel(c)});
    }
  }
  write_embeddings(dir.path() / "emb.txt", emb);
  write_labeled(dir.path() / "data.jsonl", labeled);
  Checkpoint cp{LinearHead(4, 4), 0, LossConfig::cross_entropy()};
  for (std::size_t c = 0; c < 4; ++c) cp.head.weight(c, c) = 1.0;
  write_checkpoint(dir.path() / "cp.txt", cp);
  const auto r = run({"eval", "--checkpoint", dir / "cp.txt", "--data",
                      dir / "data.jsonl", "--embeddings", dir / "emb.txt",
                      "--out", dir / "v"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "accuracy 100.00\nmacro_f1 100.00\n");
}

TEST(Cli, SweepWritesEighteenCsvRows) {
  TempDir dir("sweep");
  ASSERT_EQ(run({"synth", "--out", dir / "syn"}).code, 0);
  const auto r = run({"sweep", "--corpus", dir / "syn/corpus.jsonl", "--out",
                      dir / "s", "--format", "all", "--dim", "32", "--jobs",
                      "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = io::read_file(dir / "s/report.csv");
  EXPECT_EQ(line_count(csv), 19u);
  EXPECT_EQ(io::read_file(dir / "s/report.txt"), r.out);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "s/report.json"));

  const auto none = run({"sweep", "--corpus", dir / "syn/corpus.jsonl",
                         "--out", dir / "s2", "--format", "csv", "--dim",
                         "32", "--weights", "none"});
  ASSERT_EQ(none.code, 0) << none.err;
  EXPECT_EQ(line_count(io::read_file(dir / "s2/report.csv")), 3u);
}

TEST(Cli, ConfigFileSuppliesDefaultsAndFlagsOverride) {
  PipelineDirs p;
  auto& dir = p.dir;
  io::write_file_atomic(dir.path() / "cfg.toml",
                        "[train]\nmax-epochs = 2\nloss = \"ce\"\n");
  const std::vector<std::string> base = {
      "--config", dir / "cfg.toml", "train", "--train", dir / "p/train.jsonl",
      "--validation", dir / "p/validation.jsonl", "--embeddings",
      dir / "e/embeddings.txt"};

  auto args = base;
  args.insert(args.end(), {"--out", dir / "c1"});
  auto r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(io::read_file(dir / "c1/history.csv")), 3u);
  EXPECT_EQ(read_checkpoint(dir / "c1/checkpoint.txt").loss.kind,
            LossKind::kCrossEntropy);

  args = base;
  args.insert(args.end(), {"--out", dir / "c2", "--max-epochs", "1"});
  r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(io::read_file(dir / "c2/history.csv")), 2u);
}

}  // namespace
}  // namespace casecrit
