// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lipognn/optimizer.hpp"
#include "lipognn/rng.hpp"
#include "lipognn/tensor.hpp"

namespace {

using namespace lipognn;

Matrix random_matrix(int rows, int cols, Xoshiro256& rng, double lo = -1.0,
                     double hi = 1.0) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.next_double(lo, hi);
  }
  return m;
}

TEST(Tape, ReluGradient) {
  Tape tape;
  Matrix x(1, 3);
  x << -1.0, 0.0, 2.0;
  int v = tape.leaf(x);
  int loss = tape.sum_all(tape.relu(v));
  EXPECT_DOUBLE_EQ(tape.scalar(loss), 2.0);
  tape.backward(loss);
  Matrix expected(1, 3);
  expected << 0.0, 0.0, 1.0;  // subgradient 0 at the kink
  EXPECT_TRUE(tape.grad(v).isApprox(expected));
}

TEST(Tape, SquareGradient) {
  Tape tape;
  Matrix x(1, 1);
  x << 3.0;
  int v = tape.leaf(x);
  int loss = tape.sum_all(tape.square(v));
  tape.backward(loss);
  EXPECT_DOUBLE_EQ(tape.grad(v)(0, 0), 6.0);
}

TEST(Tape, MeanRowsDistributesAndConserves) {
  Tape tape;
  Matrix x = Matrix::Ones(3, 2);
  int v = tape.leaf(x);
  int loss = tape.sum_all(tape.mean_rows(v));
  tape.backward(loss);
  const Matrix& g = tape.grad(v);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(g(i, j), 1.0 / 3.0, 1e-15);
  }
  EXPECT_NEAR(g.col(0).sum(), 1.0, 1e-15);  // conservation per column
}

TEST(Tape, BiasBroadcastGradientIsColumnSum) {
  Tape tape;
  Xoshiro256 rng(3);
  int x = tape.constant(random_matrix(4, 3, rng));
  Matrix bias = Matrix::Zero(1, 3);
  int b = tape.leaf(bias);
  int loss = tape.sum_all(tape.add(x, b));
  tape.backward(loss);
  Matrix expected = Matrix::Constant(1, 3, 4.0);  // 4 rows each pass grad 1
  EXPECT_TRUE(tape.grad(b).isApprox(expected));
}

TEST(Tape, ConcatAndStackSliceGradients) {
  Tape tape;
  Matrix a = Matrix::Ones(2, 2), b = Matrix::Ones(2, 3);
  int va = tape.leaf(a), vb = tape.leaf(b);
  int cat = tape.concat_cols({va, vb});
  Matrix weight = Matrix::Zero(1, 5);
  weight << 1, 2, 3, 4, 5;
  int loss = tape.sum_all(tape.mul(cat, tape.constant(weight.replicate(2, 1))));
  tape.backward(loss);
  EXPECT_DOUBLE_EQ(tape.grad(va)(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(tape.grad(va)(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(tape.grad(vb)(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(tape.grad(vb)(1, 2), 5.0);

  Tape tape2;
  int ra = tape2.leaf(Matrix::Ones(1, 2));
  int rb = tape2.leaf(Matrix::Ones(2, 2));
  int stacked = tape2.stack_rows({ra, rb});
  EXPECT_EQ(tape2.value(stacked).rows(), 3);
  int loss2 = tape2.sum_all(stacked);
  tape2.backward(loss2);
  EXPECT_TRUE(tape2.grad(ra).isApprox(Matrix::Ones(1, 2)));
  EXPECT_TRUE(tape2.grad(rb).isApprox(Matrix::Ones(2, 2)));
}

TEST(Tape, ShapeErrors) {
  Tape tape;
  int a = tape.constant(Matrix::Zero(2, 3));
  int b = tape.constant(Matrix::Zero(2, 2));
  EXPECT_THROW(tape.matmul(a, b), ShapeMismatch);
  EXPECT_THROW(tape.sub(a, b), ShapeMismatch);
  EXPECT_THROW(tape.mul(a, b), ShapeMismatch);
  EXPECT_THROW(tape.backward(a), ShapeMismatch);  // root not scalar
}

TEST(Tape, RejectsNonFiniteValues) {
  Tape tape;
  Matrix bad(1, 1);
  bad << std::numeric_limits<double>::infinity();
  EXPECT_THROW(tape.constant(bad), NonFiniteValue);
  Matrix neg(1, 1);
  neg << -1.0;
  int v = tape.constant(neg);
  EXPECT_THROW(tape.sqrt(v), NonFiniteValue);
}

TEST(Tape, ConstantGraphHasZeroGradients) {
  Tape tape;
  int x = tape.leaf(Matrix::Ones(2, 2));
  int c = tape.constant(Matrix::Ones(2, 2));
  int loss = tape.sum_all(c);  // loss ignores x entirely
  tape.backward(loss);
  EXPECT_TRUE((tape.grad(x).array() == 0.0).all());
}

TEST(GradCheck, LinearModelSquaredLoss) {
  Xoshiro256 rng(7);
  Matrix x = random_matrix(6, 4, rng);
  Matrix target = random_matrix(6, 1, rng);
  Matrix w = random_matrix(4, 1, rng);
  double err = grad_check(
      {&w},
      [&](Tape& tape, const std::vector<int>& vars) {
        int pred = tape.matmul(tape.constant(x), vars[0]);
        int diff = tape.sub(pred, tape.constant(target));
        return tape.scale(tape.sum_all(tape.square(diff)), 1.0 / 6.0);
      });
  EXPECT_LT(err, 1e-8);
}

TEST(GradCheck, TwoLayerNetwork) {
  Xoshiro256 rng(11);
  Matrix x = random_matrix(4, 5, rng);
  Matrix target = random_matrix(4, 2, rng);
  Matrix w1 = random_matrix(5, 8, rng, -0.7, 0.7);
  Matrix b1 = random_matrix(1, 8, rng, -0.1, 0.1);
  Matrix w2 = random_matrix(8, 2, rng, -0.7, 0.7);
  Matrix b2 = random_matrix(1, 2, rng, -0.1, 0.1);
  double err = grad_check(
      {&w1, &b1, &w2, &b2},
      [&](Tape& tape, const std::vector<int>& vars) {
        int hidden = tape.relu(
            tape.add(tape.matmul(tape.constant(x), vars[0]), vars[1]));
        int pred = tape.add(tape.matmul(hidden, vars[2]), vars[3]);
        int diff = tape.sub(pred, tape.constant(target));
        return tape.scale(tape.sum_all(tape.square(diff)), 1.0 / 8.0);
      });
  EXPECT_LT(err, 1e-6);
}

TEST(GradCheck, SqrtAndMeanPath) {
  // exercise the ops the RMSE loss uses: square -> mean -> sqrt
  Xoshiro256 rng(13);
  Matrix pred = random_matrix(5, 1, rng);
  Matrix target = random_matrix(5, 1, rng);
  double err = grad_check(
      {&pred},
      [&](Tape& tape, const std::vector<int>& vars) {
        int diff = tape.sub(vars[0], tape.constant(target));
        int mse = tape.scale(tape.sum_all(tape.square(diff)), 1.0 / 5.0);
        return tape.sqrt(mse);
      });
  EXPECT_LT(err, 1e-7);
}

TEST(Adam, ZeroGradientLeavesParamsUnchanged) {
  Matrix p = Matrix::Ones(2, 2);
  Matrix before = p;
  Adam opt;
  opt.step({&p}, {Matrix::Zero(2, 2)});
  EXPECT_TRUE(p.isApprox(before));
}

TEST(Adam, FirstStepIsSignedLearningRate) {
  Matrix p = Matrix::Zero(1, 3);
  Matrix g(1, 3);
  g << 0.5, -2.0, 10.0;
  AdamConfig config;
  config.learning_rate = 1e-3;
  Adam opt(config);
  opt.step({&p}, {g});
  // bias-corrected first step: -lr * g / (|g| + eps') ~ -lr * sign(g)
  EXPECT_NEAR(p(0, 0), -1e-3, 1e-9);
  EXPECT_NEAR(p(0, 1), 1e-3, 1e-9);
  EXPECT_NEAR(p(0, 2), -1e-3, 1e-9);
}

TEST(Adam, ConstantGradientStepsStaySteady) {
  Matrix p = Matrix::Zero(1, 1);
  Matrix g = Matrix::Constant(1, 1, 3.0);
  Adam opt;
  opt.step({&p}, {g});
  double first = std::abs(p(0, 0));
  double prev = p(0, 0);
  opt.step({&p}, {g});
  double second = std::abs(p(0, 0) - prev);
  EXPECT_NEAR(second / first, 1.0, 0.01);
}

TEST(Adam, ShapeChecks) {
  Matrix p = Matrix::Zero(2, 2);
  Adam opt;
  EXPECT_THROW(opt.step({&p}, {Matrix::Zero(1, 2)}), ShapeMismatch);
  EXPECT_THROW(opt.step({&p}, {}), ShapeMismatch);
}

}  // namespace
