#include <gtest/gtest.h>

#include <cmath>

#include "casecrit/model.hpp"
#include "casecrit/random.hpp"
#include "oracles.hpp"

namespace casecrit {
namespace {

TEST(Forward, ZeroWeightsReturnBias) {
  LinearHead head(4, 3);
  head.bias()[0] = 0.5;
  head.bias()[3] = -2.0;
  EXPECT_EQ(forward(head, Vector{7, 8, 9}), (Vector{0.5, 0, 0, -2.0}));
}

TEST(Forward, IdentityWeights) {
  LinearHead head(2, 2);
  head.weight(0, 0) = 1;
  head.weight(1, 1) = 1;
  EXPECT_EQ(forward(head, Vector{3, -1}), (Vector{3, -1}));
}

TEST(Forward, MatchesExtendedPrecisionOracle) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + rng.uniform_index(40);
    LinearHead head = LinearHead::random(4, d, rng.next());
    for (double& b : head.bias()) b = rng.uniform(-1, 1);
    Vector x(d);
    for (double& v : x) v = rng.uniform(-5, 5);
    const Vector got = forward(head, x);
    for (std::size_t c = 0; c < 4; ++c) {
      long double acc = head.bias()[c];
      for (std::size_t k = 0; k < d; ++k) {
        acc += static_cast<long double>(head.weight(c, k)) * x[k];
      }
      EXPECT_NEAR(got[c], static_cast<double>(acc), 1e-9);
    }
  }
}

TEST(Forward, DimensionMismatch) {
  LinearHead head(4, 3);
  EXPECT_THROW(forward(head, Vector{1, 2}), DataError);
}

TEST(LinearHead, RandomInitWithinBoundsAndSeeded) {
  const auto a = LinearHead::random(4, 100, 5);
  EXPECT_EQ(a, LinearHead::random(4, 100, 5));
  EXPECT_NE(a, LinearHead::random(4, 100, 6));
  for (double w : a.weights()) EXPECT_LE(std::abs(w), 0.1);
  for (double b : a.bias()) EXPECT_EQ(b, 0.0);
  EXPECT_THROW(LinearHead(1, 3), std::invalid_argument);
}

TEST(Softmax, Uniform) {
  for (double p : softmax(Vector{0, 0, 0, 0})) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(Softmax, OneHotLogit) {
  // Frozen from a 30-digit evaluation of e/(e+3) and 1/(e+3).
  const Vector p = softmax(Vector{1, 0, 0, 0});
  EXPECT_NEAR(p[0], 0.475366886418671691, 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(p[i], 0.174877704527109436, 1e-15);
}

TEST(Softmax, LargeLogitDoesNotOverflow) {
  const Vector p = softmax(Vector{1000, 0, 0, 0});
  EXPECT_EQ(p[0], 1.0);
  for (double v : p) EXPECT_TRUE(std::isfinite(v));
}

TEST(Softmax, ShiftInvariantNormalizedPositive) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Vector x(4);
    for (double& v : x) v = rng.uniform(-20, 20);
    const Vector p = softmax(x);
    double sum = 0;
    for (double v : p) {
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    const double c = rng.uniform(-100, 100);
    Vector shifted = x;
    for (double& v : shifted) v += c;
    const Vector q = softmax(shifted);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(q[i], p[i], 1e-12);
    const oracle::LVec ref = oracle::softmax(x);
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(p[i], static_cast<double>(ref[i]), 1e-14);
    }
  }
}

TEST(Argmax, TieBreakAndBasic) {
  EXPECT_EQ(argmax(Vector{0, 0, 0, 0}), 0u);
  EXPECT_EQ(argmax(Vector{1, 2, 3, 2}), 2u);
  EXPECT_EQ(argmax(Vector{1, 3, 3, 2}), 1u);
}

TEST(Argmax, MatchesLinearScanAndMonotoneTransforms) {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    Vector x(4);
    // Coarse values so ties happen.
    for (double& v : x) v = static_cast<double>(rng.uniform_index(4));
    std::size_t best = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      bool strictly_better = true;
      for (std::size_t j = 0; j < i; ++j) strictly_better &= x[i] > x[j];
      bool at_least_rest = true;
      for (std::size_t j = i; j < 4; ++j) at_least_rest &= x[i] >= x[j];
      if (strictly_better && at_least_rest) {
        best = i;
        break;
      }
    }
    EXPECT_EQ(argmax(x), best);
    Vector t = x;
    for (double& v : t) v = std::exp(v) + 7.0;
    EXPECT_EQ(argmax(t), best);
  }
}

TEST(Predict, UsesForward) {
  LinearHead head(4, 2);
  head.weight(3, 0) = 1.0;
  EXPECT_EQ(predict(head, Vector{2, 0}).index(), 3u);
  EXPECT_EQ(predict(head, Vector{-2, 0}).index(), 0u);
}

TEST(Checkpoint, RoundTripsExactly) {
  Rng rng(14);
  Checkpoint cp{LinearHead::random(4, 33, 9), 12345,
                LossConfig::opposite_class_weighted(4.5)};
  cp.loss.literal_sign = true;
  for (double& b : cp.head.bias()) b = rng.uniform(-1, 1) * 1e-7;
  const Checkpoint back = parse_checkpoint(serialize_checkpoint(cp));
  EXPECT_EQ(back.head, cp.head);
  EXPECT_EQ(back.seed, cp.seed);
  EXPECT_EQ(back.loss, cp.loss);

  Checkpoint ce{LinearHead(4, 2), 0, LossConfig::cross_entropy()};
  EXPECT_EQ(parse_checkpoint(serialize_checkpoint(ce)).loss, ce.loss);
}

TEST(Checkpoint, RejectsTruncatedOrForeignText) {
  Checkpoint cp{LinearHead(4, 2), 0, LossConfig::cross_entropy()};
  std::string text = serialize_checkpoint(cp);
  EXPECT_THROW(parse_checkpoint(text.substr(0, text.size() / 2)), DataError);
  EXPECT_THROW(parse_checkpoint("hello\n"), DataError);
}

}  // namespace
}  // namespace casecrit
