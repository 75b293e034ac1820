// Copyright 2026 The MGCT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mgct/numkit/ops.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "mgct/errors.hpp"
#include "mgct/numkit/gradcheck.hpp"
#include "test_support.hpp"

namespace mgct::numkit {
namespace {

using testing::random_tensor;

Var weighted_sum(Var v, Rng& rng) {
  return sum(hadamard(v, v.tape().constant(random_tensor(v.rows(), v.cols(), rng))));
}

// Checks one op applied to random inputs in [-2, 2] against finite differences.
GradCheckReport check_op(std::vector<Tensor> inputs, const std::function<Var(std::vector<Var>&)>& op,
                         std::uint64_t seed, double tolerance) {
  ParamList params;
  for (std::size_t i = 0; i < inputs.size(); ++i) params.push_back({"x" + std::to_string(i), &inputs[i]});
  LossFn loss = [&](ParamBinder& b) {
    std::vector<Var> vars;
    for (auto& t : inputs) vars.push_back(b(t));
    Rng proj(seed);
    return weighted_sum(op(vars), proj);
  };
  GradCheckOptions opt;
  opt.tolerance = tolerance;
  return check_gradients(loss, params, opt);
}

TEST(Ops, SoftmaxExamples) {
  Tape tape;
  const Tensor uniform = softmax_rows(tape.constant(Tensor::from_rows({{0, 0, 0}}))).value();
  for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(uniform(0, c), 1.0 / 3.0, 1e-15);
  const Tensor big = softmax_rows(tape.constant(Tensor::from_rows({{1000, 0}}))).value();
  EXPECT_TRUE(big.all_finite());
  EXPECT_NEAR(big(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(big(0, 1), 0.0, 1e-15);
}

TEST(Ops, SoftmaxRowsOnSimplexForRandomInputs) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Tape tape;
    const double scale = std::pow(10.0, rng.uniform(-2.0, 3.0));
    const Tensor y =
        softmax_rows(tape.constant(random_tensor(1 + rng.index(8), 1 + rng.index(16), rng, -scale, scale))).value();
    for (std::size_t r = 0; r < y.rows(); ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < y.cols(); ++c) {
        EXPECT_GE(y(r, c), 0.0);
        s += y(r, c);
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

TEST(Ops, ActivationFixedPoints) {
  Tape tape;
  Var zero = tape.constant(Tensor(1, 1));
  EXPECT_EQ(activation(zero, Activation::kTanh).value()[0], 0.0);
  EXPECT_EQ(activation(zero, Activation::kSigmoid).value()[0], 0.5);
  EXPECT_EQ(activation(zero, Activation::kElu).value()[0], 0.0);
  EXPECT_EQ(activation(zero, Activation::kRelu).value()[0], 0.0);
  Var minus_one = tape.constant(Tensor(1, 1, -1.0));
  EXPECT_NEAR(activation(minus_one, Activation::kElu).value()[0], std::exp(-1.0) - 1.0, 1e-15);
  EXPECT_EQ(activation(minus_one, Activation::kRelu).value()[0], 0.0);
}

TEST(Ops, ConcatShapesAndSplitRoundTrip) {
  Rng rng(2);
  Tape tape;
  const Tensor a = random_tensor(2, 3, rng), b = random_tensor(2, 3, rng);
  Var cols = concat(tape.constant(a), tape.constant(b), Axis::kCols);
  EXPECT_EQ(cols.shape(), (Shape{2, 6}));
  EXPECT_EQ(slice_cols(cols, 0, 3).value(), a);
  EXPECT_EQ(slice_cols(cols, 3, 3).value(), b);
  const Tensor c = random_tensor(1, 5, rng), d = random_tensor(1, 5, rng);
  Var rows = concat(tape.constant(c), tape.constant(d), Axis::kRows);
  EXPECT_EQ(rows.shape(), (Shape{2, 5}));
  EXPECT_EQ(slice_rows(rows, 0, 1).value(), c);
  EXPECT_EQ(slice_rows(rows, 1, 1).value(), d);
  EXPECT_THROW(concat(tape.constant(Tensor(2, 3)), tape.constant(Tensor(3, 3)), Axis::kCols), ShapeError);
  EXPECT_THROW(concat(tape.constant(Tensor(2, 3)), tape.constant(Tensor(2, 4)), Axis::kRows), ShapeError);
}

TEST(Ops, BackwardClosedForms) {
  Rng rng(8);
  Tensor w = random_tensor(3, 4, rng);
  {
    Tape tape;
    Var x = tape.parameter(w);
    Gradients g = tape.backward(sum(x));
    EXPECT_EQ(g.of(x), Tensor(3, 4, 1.0));
  }
  {
    Tape tape;
    Var x = tape.parameter(w);
    Var loss = sum(hadamard(x, x));
    Gradients g = tape.backward(loss);
    Tensor expected = w;
    for (auto& v : expected.data()) v *= 2.0;
    EXPECT_LT(max_abs_diff(g.of(x), expected), 1e-15);
    EXPECT_EQ(g.of(loss), Tensor(1, 1, 1.0));
  }
}

TEST(Ops, SharedInputAccumulatesBothPaths) {
  Tape tape;
  Var x = tape.variable(Tensor(1, 1, 3.0));
  // f = x * x + 2x, f' = 2x + 2 = 8.
  Var f = add(hadamard(x, x), scale(x, 2.0));
  EXPECT_EQ(tape.backward(f).of(x)[0], 8.0);
}

TEST(Ops, BackwardRejectsNonScalarOrForeignLoss) {
  Tape tape, other;
  Var x = tape.variable(Tensor(2, 2, 1.0));
  EXPECT_THROW(tape.backward(x), ContractError);
  Var y = other.variable(Tensor(1, 1, 1.0));
  EXPECT_THROW(tape.backward(y), ContractError);
  EXPECT_THROW(add(x, other.variable(Tensor(2, 2))), ContractError);
}

TEST(Ops, ParentsPrecedeChildren) {
  Tape tape;
  Var a = tape.variable(Tensor(2, 2, 1.0));
  Var b = matmul(a, a);
  Var c = sum(add(b, a));
  EXPECT_LT(a.id(), b.id());
  EXPECT_LT(b.id(), c.id());
  EXPECT_EQ(tape.op_name(b.id()), "matmul");
}

TEST(Ops, MatmulGradientMatchesFiniteDifferences) {
  Rng rng(21);
  auto r = check_op({random_tensor(5, 4, rng), random_tensor(4, 3, rng)},
                    [](auto& v) { return matmul(v[0], v[1]); }, 1, 1e-6);
  EXPECT_TRUE(r.passed) << r.max_rel_error;
}

TEST(Ops, SoftmaxGradientMatchesFiniteDifferences) {
  Rng rng(22);
  auto r = check_op({random_tensor(3, 4, rng)}, [](auto& v) { return softmax_rows(v[0]); }, 2, 1e-5);
  EXPECT_TRUE(r.passed) << r.max_rel_error;
}

TEST(Ops, ActivationGradientsMatchFiniteDifferences) {
  Rng rng(23);
  for (Activation kind : {Activation::kTanh, Activation::kSigmoid, Activation::kElu, Activation::kRelu}) {
    Tensor x = random_tensor(4, 5, rng);
    for (auto& v : x.data()) {
      if (std::abs(v) < 0.05) v = 0.05;  // keep clear of the kink at 0
    }
    auto r = check_op({x}, [kind](auto& v) { return activation(v[0], kind); }, 3, 1e-5);
    EXPECT_TRUE(r.passed) << to_string(kind) << " " << r.max_rel_error;
  }
}

TEST(Ops, EveryPrimitiveGradientMatchesFiniteDifferences) {
  Rng rng(24);
  auto t = [&](std::size_t r, std::size_t c) { return random_tensor(r, c, rng); };
  auto pos = [&](std::size_t r, std::size_t c) { return random_tensor(r, c, rng, 0.1, 2.0); };
  struct Case {
    const char* name;
    std::vector<Tensor> inputs;
    std::function<Var(std::vector<Var>&)> op;
  };
  std::vector<Case> cases = {
      {"transpose", {t(3, 4)}, [](auto& v) { return transpose(v[0]); }},
      {"add", {t(3, 4), t(3, 4)}, [](auto& v) { return add(v[0], v[1]); }},
      {"sub", {t(3, 4), t(3, 4)}, [](auto& v) { return sub(v[0], v[1]); }},
      {"hadamard", {t(3, 4), t(3, 4)}, [](auto& v) { return hadamard(v[0], v[1]); }},
      {"scale", {t(3, 4)}, [](auto& v) { return scale(v[0], 0.7); }},
      {"affine", {t(3, 4)}, [](auto& v) { return affine(v[0], -1.3, 0.4); }},
      {"add_column", {t(3, 4), t(3, 1)}, [](auto& v) { return add_column(v[0], v[1]); }},
      {"concat_rows", {t(2, 4), t(3, 4)}, [](auto& v) { return concat(v[0], v[1], Axis::kRows); }},
      {"concat_cols", {t(3, 2), t(3, 3)}, [](auto& v) { return concat(v[0], v[1], Axis::kCols); }},
      {"slice_rows", {t(4, 3)}, [](auto& v) { return slice_rows(v[0], 1, 2); }},
      {"slice_cols", {t(3, 4)}, [](auto& v) { return slice_cols(v[0], 1, 2); }},
      {"mean_cols", {t(3, 4)}, [](auto& v) { return mean_cols(v[0]); }},
      {"element", {t(3, 4)}, [](auto& v) { return element(v[0], 1, 2); }},
      {"cumprod_cols", {t(2, 5)}, [](auto& v) { return cumprod_cols(v[0]); }},
      {"log_clamped", {pos(3, 4)}, [](auto& v) { return log_clamped(v[0], 1e-7); }},
      {"alpha_dropout", {t(5, 5)}, [](auto& v) { return alpha_dropout(v[0], 0.3, {7, 2, 9}, true); }},
  };
  for (auto& c : cases) {
    auto r = check_op(c.inputs, c.op, 4, 1e-4);
    EXPECT_TRUE(r.passed) << c.name << " " << r.max_rel_error;
  }
}

TEST(Ops, LogClampedBelowFloorHasZeroGradient) {
  Tape tape;
  Var x = tape.variable(Tensor(1, 2, {0.0, 0.5}));
  Var y = log_clamped(x, 1e-7);
  EXPECT_NEAR(y.value()[0], std::log(1e-7), 1e-12);
  Gradients g = tape.backward(sum(y));
  EXPECT_EQ(g.of(x)[0], 0.0);
  EXPECT_NEAR(g.of(x)[1], 2.0, 1e-15);
}

TEST(Ops, AlphaDropoutIdentityCases) {
  Rng rng(4);
  Tape tape;
  const Tensor x = random_tensor(4, 4, rng);
  Var v = tape.constant(x);
  EXPECT_EQ(alpha_dropout(v, 0.0, {1, 2, 3}, true).value(), x);
  EXPECT_EQ(alpha_dropout(v, 0.7, {1, 2, 3}, false).value(), x);
  EXPECT_THROW(alpha_dropout(v, 1.0, {1, 2, 3}, true), ContractError);
  EXPECT_THROW(alpha_dropout(v, -0.1, {1, 2, 3}, true), ContractError);
}

TEST(Ops, AlphaDropoutIsKeyedDeterministically) {
  Rng rng(4);
  Tape tape;
  Var v = tape.constant(random_tensor(6, 6, rng));
  EXPECT_EQ(alpha_dropout(v, 0.4, {1, 2, 3}, true).value(), alpha_dropout(v, 0.4, {1, 2, 3}, true).value());
  EXPECT_NE(alpha_dropout(v, 0.4, {1, 2, 3}, true).value(), alpha_dropout(v, 0.4, {1, 2, 4}, true).value());
  EXPECT_NE(alpha_dropout(v, 0.4, {1, 2, 3}, true).value(), alpha_dropout(v, 0.4, {1, 3, 3}, true).value());
}

TEST(Ops, AlphaDropoutPreservesStandardNormalMoments) {
  Rng rng(99);
  constexpr std::size_t n = 1000000;
  Tensor x(1000, n / 1000);
  for (auto& v : x.data()) v = rng.normal();
  Tape tape;
  const Tensor y = alpha_dropout(tape.constant(x), 0.5, {12, 0, 0}, true).value();
  double mean = 0.0;
  for (double v : y.data()) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : y.data()) var += (v - mean) * (v - mean);
  var /= n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(Ops, NoNonFiniteOutputsOnRandomShapes) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + rng.index(16), n = 1 + rng.index(16);
    const double s = trial % 3 == 0 ? 50.0 : 2.0;
    Tape tape;
    Var a = tape.variable(random_tensor(m, n, rng, -s, s));
    Var b = tape.variable(random_tensor(m, n, rng, -s, s));
    Var sq = tape.variable(random_tensor(n, 1 + rng.index(16), rng, -s, s));
    std::vector<Var> outs = {
        matmul(a, sq),
        transpose(a),
        add(a, b),
        sub(a, b),
        hadamard(a, b),
        affine(a, 0.5, 1.0),
        add_column(a, slice_cols(b, 0, 1)),
        softmax_rows(a),
        activation(a, Activation::kTanh),
        activation(a, Activation::kSigmoid),
        activation(a, Activation::kElu),
        activation(a, Activation::kRelu),
        concat(a, b, Axis::kRows),
        concat(a, b, Axis::kCols),
        mean_cols(a),
        cumprod_cols(activation(a, Activation::kSigmoid)),
        log_clamped(activation(a, Activation::kSigmoid), 1e-7),
        alpha_dropout(a, 0.25, {1, 1, static_cast<std::uint64_t>(trial)}, true),
    };
    Var total = tape.constant(Tensor(1, 1));
    for (Var o : outs) {
      ASSERT_TRUE(o.value().all_finite()) << tape.op_name(o.id());
      total = add(total, scale(sum(o), 1e-3));
    }
    Gradients g = tape.backward(total);
    EXPECT_TRUE(g.of(a).all_finite());
    EXPECT_TRUE(g.of(b).all_finite());
    EXPECT_TRUE(g.of(sq).all_finite());
  }
}

}  // namespace
}  // namespace mgct::numkit
