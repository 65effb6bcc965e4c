#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "casecrit/loss.hpp"
#include "casecrit/model.hpp"
#include "casecrit/random.hpp"
#include "oracles.hpp"

namespace casecrit {
namespace {

const Vector kUniform = {0.25, 0.25, 0.25, 0.25};

Vector random_logits(Rng& rng, double lo = -4, double hi = 4) {
  Vector x(4);
  for (double& v : x) v = rng.uniform(lo, hi);
  return x;
}

TEST(ClassWeights, AlgorithmBranchTable) {
  EXPECT_EQ(class_weights(0, 4, 4).w, (Vector{0, 1, 4, 4}));
  EXPECT_EQ(class_weights(3, 4, 4).w, (Vector{4, 4, 1, 0}));
  EXPECT_EQ(class_weights(1, 4, 1).w, (Vector{1, 0, 1, 1}));
  EXPECT_EQ(class_weights(2, 4, 7).w, (Vector{7, 7, 0, 1}));
  EXPECT_EQ(class_weights(0, 4, 4).mid, 2u);
}

TEST(ClassWeights, StructureForEveryLabelAndWeight) {
  for (std::size_t label = 0; label < 4; ++label) {
    for (int w = 1; w <= 8; ++w) {
      const auto cw = class_weights(label, 4, w);
      EXPECT_EQ(cw.w[label], 0.0);
      if (w == 1) continue;
      EXPECT_EQ(std::count(cw.w.begin(), cw.w.end(), double(w)), 2);
      EXPECT_EQ(std::count(cw.w.begin(), cw.w.end(), 1.0), 1);
    }
  }
}

TEST(ClassWeights, OddClassCountFollowsMidArithmetic) {
  // mid = (3 + 1) / 2 = 2: classes {0, 1} vs {2}.
  EXPECT_EQ(class_weights(0, 3, 5).w, (Vector{0, 1, 5}));
  EXPECT_EQ(class_weights(2, 3, 5).w, (Vector{5, 5, 0}));
}

TEST(ClassWeights, LabelOutOfRange) {
  EXPECT_THROW(class_weights(4, 4, 1), DataError);
}

TEST(CrossEntropy, UniformIsLn4) {
  for (std::size_t label = 0; label < 4; ++label) {
    EXPECT_NEAR(cross_entropy(kUniform, label).loss, 1.386294361119890618,
                1e-15);
  }
}

TEST(CrossEntropy, PerfectPredictionGoesToZero) {
  const Vector p = softmax(Vector{40, 0, 0, 0});
  EXPECT_LT(cross_entropy(p, 0).loss, 1e-15);
}

TEST(CrossEntropy, GradientIsProbsMinusOneHot) {
  const auto lv = cross_entropy(Vector{0.1, 0.2, 0.3, 0.4}, 2);
  EXPECT_NEAR(lv.grad[0], 0.1, 1e-15);
  EXPECT_NEAR(lv.grad[2], -0.7, 1e-15);
}

TEST(OppositeClassWeighted, UniformProbsFrozenValues) {
  // 30-digit evaluation of -3 ln 0.75 and -9 ln 0.75.
  const auto w1 = opposite_class_weighted_loss(
      kUniform, 0, LossConfig::opposite_class_weighted(1));
  EXPECT_NEAR(w1.loss, 0.863046217355342782, 1e-14);
  const auto w4 = opposite_class_weighted_loss(
      kUniform, 0, LossConfig::opposite_class_weighted(4));
  EXPECT_NEAR(w4.loss, 2.589138652066028347, 1e-14);
}

TEST(OppositeClassWeighted, AllMassOnLabelGivesZeroLoss) {
  const auto lv = opposite_class_weighted_loss(
      Vector{0, 0, 1, 0}, 2, LossConfig::opposite_class_weighted(8));
  EXPECT_EQ(lv.loss, 0.0);
  for (double g : lv.grad) EXPECT_EQ(g, 0.0);
}

TEST(OppositeClassWeighted, UnitProbabilityOnWeightedClassIsAnError) {
  EXPECT_THROW(opposite_class_weighted_loss(
                   Vector{0, 0, 1, 0}, 0,
                   LossConfig::opposite_class_weighted(2)),
               NumericalError);
}

TEST(OppositeClassWeighted, LiteralSignNegates) {
  Rng rng(1);
  const Vector p = softmax(random_logits(rng));
  auto cfg = LossConfig::opposite_class_weighted(3);
  const auto neg = opposite_class_weighted_loss(p, 1, cfg);
  cfg.literal_sign = true;
  const auto lit = opposite_class_weighted_loss(p, 1, cfg);
  EXPECT_EQ(lit.loss, -neg.loss);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(lit.grad[i], -neg.grad[i]);
  EXPECT_GT(neg.loss, 0.0);
}

TEST(OppositeClassWeighted, MatchesDirectOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector z = random_logits(rng);
    const std::size_t label = rng.uniform_index(4);
    const double w = 1 + static_cast<double>(rng.uniform_index(8));
    const auto lv = example_loss(z, label, LossConfig::opposite_class_weighted(w));
    EXPECT_NEAR(lv.loss, static_cast<double>(oracle::opposite_loss(z, label, w)),
                1e-12);
  }
}

TEST(LossGradient, MatchesCentralDifferences) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector z = random_logits(rng);
    const std::size_t label = rng.uniform_index(4);
    const double w = 1 + static_cast<double>(rng.uniform_index(8));

    const auto ocw = example_loss(z, label, LossConfig::opposite_class_weighted(w));
    const auto num_ocw = oracle::numeric_gradient(
        z, [&](const Vector& x) { return oracle::opposite_loss(x, label, w); },
        1e-4);
    EXPECT_LE(oracle::relative_error(ocw.grad, num_ocw), 1e-5);

    const auto ce = example_loss(z, label, LossConfig::cross_entropy());
    const auto num_ce = oracle::numeric_gradient(
        z, [&](const Vector& x) { return oracle::cross_entropy(x, label); },
        1e-4);
    EXPECT_LE(oracle::relative_error(ce.grad, num_ce), 1e-5);
  }
}

TEST(OppositeClassWeighted, StrictlyIncreasingInWeight) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector p = softmax(random_logits(rng));
    const std::size_t label = rng.uniform_index(4);
    double prev = -1;
    for (int w = 1; w <= 8; ++w) {
      const double l = opposite_class_weighted_loss(
                           p, label, LossConfig::opposite_class_weighted(w))
                           .loss;
      EXPECT_GT(l, prev);
      prev = l;
    }
  }
}

TEST(OppositeClassWeighted, IncreasingOppositeMassIncreasesLoss) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Vector p = softmax(random_logits(rng));
    const std::size_t label = rng.uniform_index(4);
    const std::size_t opposite = label < 2 ? 2 + rng.uniform_index(2)
                                           : rng.uniform_index(2);
    const auto cfg = LossConfig::opposite_class_weighted(
        1 + static_cast<double>(rng.uniform_index(8)));
    const double before = opposite_class_weighted_loss(p, label, cfg).loss;
    const double delta = 0.5 * p[label];
    p[opposite] += delta;
    p[label] -= delta;
    EXPECT_GT(opposite_class_weighted_loss(p, label, cfg).loss, before);
  }
}

TEST(OppositeClassWeighted, UnitWeightIsSymmetricInNonLabelClasses) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    Vector p = softmax(random_logits(rng));
    const std::size_t label = rng.uniform_index(4);
    const auto cfg = LossConfig::opposite_class_weighted(1);
    const double base = opposite_class_weighted_loss(p, label, cfg).loss;
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < 4; ++i) if (i != label) others.push_back(i);
    Vector q = p;
    q[others[0]] = p[others[2]];
    q[others[1]] = p[others[0]];
    q[others[2]] = p[others[1]];
    EXPECT_NEAR(opposite_class_weighted_loss(q, label, cfg).loss, base, 1e-14);
  }
}

TEST(LossGradient, SmallStepDescends) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector z = random_logits(rng);
    const std::size_t label = rng.uniform_index(4);
    for (const auto& cfg :
         {LossConfig::cross_entropy(),
          LossConfig::opposite_class_weighted(
              1 + static_cast<double>(rng.uniform_index(8)))}) {
      const auto lv = example_loss(z, label, cfg);
      Vector stepped = z;
      for (int i = 0; i < 4; ++i) stepped[i] -= 1e-3 * lv.grad[i];
      EXPECT_LT(example_loss(stepped, label, cfg).loss, lv.loss);
    }
  }
}

TEST(BatchLoss, SingleAndDuplicatedExamples) {
  const Vector z = {0.3, -1.2, 2.0, 0.1};
  const auto cfg = LossConfig::opposite_class_weighted(5);
  const auto single = example_loss(z, 1, cfg);
  std::vector<Vector> one = {z};
  std::vector<std::size_t> l1 = {1};
  const auto b1 = batch_loss(one, l1, cfg);
  EXPECT_EQ(b1.loss, single.loss);
  EXPECT_EQ(b1.grad[0], single.grad);

  std::vector<Vector> two = {z, z};
  std::vector<std::size_t> l2 = {1, 1};
  const auto b2 = batch_loss(two, l2, cfg);
  EXPECT_DOUBLE_EQ(b2.loss, single.loss);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(b2.grad[0][i], 0.5 * single.grad[i]);
}

TEST(BatchLoss, MeanOfPerExampleLosses) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(40);
    std::vector<Vector> z;
    std::vector<std::size_t> labels;
    for (std::size_t k = 0; k < n; ++k) {
      z.push_back(random_logits(rng));
      labels.push_back(rng.uniform_index(4));
    }
    const double w = 1 + static_cast<double>(rng.uniform_index(8));
    const auto b = batch_loss(z, labels, LossConfig::opposite_class_weighted(w));
    long double sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
      sum += oracle::opposite_loss(z[k], labels[k], w);
    }
    EXPECT_NEAR(b.loss, static_cast<double>(sum / n), 1e-12);
  }
}

TEST(BatchLoss, EmptyOrMismatched) {
  std::vector<Vector> none;
  std::vector<std::size_t> no_labels;
  EXPECT_THROW(batch_loss(none, no_labels, LossConfig::cross_entropy()),
               DataError);
  std::vector<Vector> one = {{0, 0, 0, 0}};
  EXPECT_THROW(batch_loss(one, no_labels, LossConfig::cross_entropy()),
               DataError);
}

TEST(LossConfig, RejectsNonPositiveWeight) {
  EXPECT_THROW(LossConfig::opposite_class_weighted(0).validate(),
               std::invalid_argument);
  EXPECT_THROW(LossConfig::opposite_class_weighted(-1).validate(),
               std::invalid_argument);
  EXPECT_NO_THROW(LossConfig::cross_entropy().validate());
}

}  // namespace
}  // namespace casecrit
