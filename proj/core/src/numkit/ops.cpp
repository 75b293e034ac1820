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

#include <algorithm>
#include <cmath>
#include <string>

#include "mgct/errors.hpp"
#include "mgct/numkit/rng.hpp"

namespace mgct::numkit {
namespace {

constexpr double kSeluAlpha = 1.6732632423543772848170429916717;
constexpr double kSeluScale = 1.0507009873554804934193349852946;
constexpr double kSaturation = -kSeluAlpha * kSeluScale;

Tape& common_tape(std::string_view op, Var a, Var b) {
  if (!a.valid() || !b.valid() || &a.tape() != &b.tape()) {
    throw ContractError(std::string(op) + ": operands live on different tapes");
  }
  return a.tape();
}

void require_same_shape(std::string_view op, Var a, Var b) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shapes " + to_string(a.shape()) + " and " + to_string(b.shape()) +
                     " differ");
  }
}

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

std::string_view to_string(Activation kind) {
  switch (kind) {
    case Activation::kTanh:
      return "tanh";
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kElu:
      return "elu";
    case Activation::kRelu:
      return "relu";
  }
  return "unknown";
}

Var matmul(Var a, Var b) {
  Tape& tape = common_tape("matmul", a, b);
  Tensor out = matmul(a.value(), b.value());
  const Tape* t = &tape;
  const auto ia = a.id(), ib = b.id();
  return tape.record("matmul", std::move(out), {ia, ib}, [t, ia, ib](const Tensor& g, std::span<Tensor* const> d) {
    if (d[0]) d[0]->add_scaled(matmul_nt(g, t->value(ib)));
    if (d[1]) d[1]->add_scaled(matmul_tn(t->value(ia), g));
  });
}

Var transpose(Var a) {
  return a.tape().record("transpose", a.value().transposed(), {a.id()},
                         [](const Tensor& g, std::span<Tensor* const> d) { d[0]->add_scaled(g.transposed()); });
}

Var add(Var a, Var b) {
  Tape& tape = common_tape("add", a, b);
  require_same_shape("add", a, b);
  Tensor out = a.value();
  out.add_scaled(b.value());
  return tape.record("add", std::move(out), {a.id(), b.id()}, [](const Tensor& g, std::span<Tensor* const> d) {
    if (d[0]) d[0]->add_scaled(g);
    if (d[1]) d[1]->add_scaled(g);
  });
}

Var sub(Var a, Var b) {
  Tape& tape = common_tape("sub", a, b);
  require_same_shape("sub", a, b);
  Tensor out = a.value();
  out.add_scaled(b.value(), -1.0);
  return tape.record("sub", std::move(out), {a.id(), b.id()}, [](const Tensor& g, std::span<Tensor* const> d) {
    if (d[0]) d[0]->add_scaled(g);
    if (d[1]) d[1]->add_scaled(g, -1.0);
  });
}

Var hadamard(Var a, Var b) {
  Tape& tape = common_tape("hadamard", a, b);
  require_same_shape("hadamard", a, b);
  Tensor out = a.value();
  const Tensor& bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  const Tape* t = &tape;
  const auto ia = a.id(), ib = b.id();
  return tape.record("hadamard", std::move(out), {ia, ib},
                     [t, ia, ib](const Tensor& g, std::span<Tensor* const> d) {
                       const Tensor& av = t->value(ia);
                       const Tensor& bv = t->value(ib);
                       for (std::size_t i = 0; i < g.size(); ++i) {
                         if (d[0]) (*d[0])[i] += g[i] * bv[i];
                         if (d[1]) (*d[1])[i] += g[i] * av[i];
                       }
                     });
}

Var scale(Var a, double factor) { return affine(a, factor, 0.0); }

Var affine(Var a, double factor, double shift) {
  Tensor out = a.value();
  for (auto& v : out.data()) v = factor * v + shift;
  return a.tape().record("affine", std::move(out), {a.id()},
                         [factor](const Tensor& g, std::span<Tensor* const> d) { d[0]->add_scaled(g, factor); });
}

Var add_column(Var a, Var column) {
  Tape& tape = common_tape("add_column", a, column);
  if (column.cols() != 1 || column.rows() != a.rows()) {
    throw ShapeError("add_column: column " + to_string(column.shape()) + " does not match " +
                     to_string(a.shape()));
  }
  Tensor out = a.value();
  const Tensor& c = column.value();
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t k = 0; k < out.cols(); ++k) out(r, k) += c[r];
  }
  return tape.record("add_column", std::move(out), {a.id(), column.id()},
                     [](const Tensor& g, std::span<Tensor* const> d) {
                       if (d[0]) d[0]->add_scaled(g);
                       if (d[1]) {
                         for (std::size_t r = 0; r < g.rows(); ++r) {
                           double s = 0.0;
                           for (std::size_t k = 0; k < g.cols(); ++k) s += g(r, k);
                           (*d[1])[r] += s;
                         }
                       }
                     });
}

Var softmax_rows(Var a) {
  const Tensor& x = a.value();
  Tensor y(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double mx = -INFINITY;
    for (std::size_t c = 0; c < x.cols(); ++c) mx = std::max(mx, x(r, c));
    double z = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) {
      y(r, c) = std::exp(x(r, c) - mx);
      z += y(r, c);
    }
    for (std::size_t c = 0; c < x.cols(); ++c) y(r, c) /= z;
  }
  Tape& tape = a.tape();
  const Tape* t = &tape;
  const auto self = static_cast<std::uint32_t>(tape.size());
  return tape.record("softmax_rows", std::move(y), {a.id()}, [t, self](const Tensor& g, std::span<Tensor* const> d) {
    const Tensor& y = t->value(self);
    for (std::size_t r = 0; r < y.rows(); ++r) {
      double dot = 0.0;
      for (std::size_t c = 0; c < y.cols(); ++c) dot += g(r, c) * y(r, c);
      for (std::size_t c = 0; c < y.cols(); ++c) (*d[0])(r, c) += y(r, c) * (g(r, c) - dot);
    }
  });
}

Var activation(Var a, Activation kind) {
  const Tensor& x = a.value();
  Tensor y(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x[i];
    switch (kind) {
      case Activation::kTanh:
        y[i] = std::tanh(v);
        break;
      case Activation::kSigmoid:
        y[i] = stable_sigmoid(v);
        break;
      case Activation::kElu:
        y[i] = v > 0.0 ? v : std::expm1(v);
        break;
      case Activation::kRelu:
        y[i] = v > 0.0 ? v : 0.0;
        break;
    }
  }
  Tape& tape = a.tape();
  const Tape* t = &tape;
  const auto ia = a.id();
  const auto self = static_cast<std::uint32_t>(tape.size());
  const bool flip = kind == Activation::kTanh && tape.options().fault == GradientFault::kTanhSign;
  return tape.record(to_string(kind), std::move(y), {ia},
                     [t, ia, self, kind, flip](const Tensor& g, std::span<Tensor* const> d) {
                       const Tensor& x = t->value(ia);
                       const Tensor& y = t->value(self);
                       Tensor& dx = *d[0];
                       for (std::size_t i = 0; i < g.size(); ++i) {
                         double local = 0.0;
                         switch (kind) {
                           case Activation::kTanh:
                             local = 1.0 - y[i] * y[i];
                             if (flip) local = -local;
                             break;
                           case Activation::kSigmoid:
                             local = y[i] * (1.0 - y[i]);
                             break;
                           case Activation::kElu:
                             local = x[i] > 0.0 ? 1.0 : y[i] + 1.0;
                             break;
                           case Activation::kRelu:
                             local = x[i] > 0.0 ? 1.0 : 0.0;
                             break;
                         }
                         dx[i] += g[i] * local;
                       }
                     });
}

Var concat(Var a, Var b, Axis axis) {
  Tape& tape = common_tape("concat", a, b);
  const Tensor& x = a.value();
  const Tensor& z = b.value();
  if (axis == Axis::kRows) {
    if (x.cols() != z.cols()) {
      throw ShapeError("concat(rows): column counts differ for " + to_string(x.shape()) + " and " +
                       to_string(z.shape()));
    }
    std::vector<double> data(x.data().begin(), x.data().end());
    data.insert(data.end(), z.data().begin(), z.data().end());
    const std::size_t top = x.rows();
    return tape.record("concat", Tensor(x.rows() + z.rows(), x.cols(), std::move(data)), {a.id(), b.id()},
                       [top](const Tensor& g, std::span<Tensor* const> d) {
                         const std::size_t split = top * g.cols();
                         for (std::size_t i = 0; i < g.size(); ++i) {
                           if (i < split) {
                             if (d[0]) (*d[0])[i] += g[i];
                           } else if (d[1]) {
                             (*d[1])[i - split] += g[i];
                           }
                         }
                       });
  }
  if (x.rows() != z.rows()) {
    throw ShapeError("concat(cols): row counts differ for " + to_string(x.shape()) + " and " + to_string(z.shape()));
  }
  Tensor out(x.rows(), x.cols() + z.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = x(r, c);
    for (std::size_t c = 0; c < z.cols(); ++c) out(r, x.cols() + c) = z(r, c);
  }
  const std::size_t left = x.cols();
  return tape.record("concat", std::move(out), {a.id(), b.id()}, [left](const Tensor& g, std::span<Tensor* const> d) {
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) {
        if (c < left) {
          if (d[0]) (*d[0])(r, c) += g(r, c);
        } else if (d[1]) {
          (*d[1])(r, c - left) += g(r, c);
        }
      }
    }
  });
}

Var slice_rows(Var a, std::size_t begin, std::size_t count) {
  const Tensor& x = a.value();
  if (begin + count > x.rows() || count == 0) {
    throw ShapeError("slice_rows: [" + std::to_string(begin) + ", +" + std::to_string(count) + ") outside " +
                     to_string(x.shape()));
  }
  const std::size_t w = x.cols();
  std::vector<double> data(x.data().begin() + begin * w, x.data().begin() + (begin + count) * w);
  return a.tape().record("slice_rows", Tensor(count, w, std::move(data)), {a.id()},
                         [begin, w](const Tensor& g, std::span<Tensor* const> d) {
                           for (std::size_t i = 0; i < g.size(); ++i) (*d[0])[begin * w + i] += g[i];
                         });
}

Var slice_cols(Var a, std::size_t begin, std::size_t count) {
  const Tensor& x = a.value();
  if (begin + count > x.cols() || count == 0) {
    throw ShapeError("slice_cols: [" + std::to_string(begin) + ", +" + std::to_string(count) + ") outside " +
                     to_string(x.shape()));
  }
  Tensor out(x.rows(), count);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < count; ++c) out(r, c) = x(r, begin + c);
  }
  return a.tape().record("slice_cols", std::move(out), {a.id()}, [begin](const Tensor& g, std::span<Tensor* const> d) {
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) (*d[0])(r, begin + c) += g(r, c);
    }
  });
}

Var sum(Var a) {
  double s = 0.0;
  for (double v : a.value().data()) s += v;
  return a.tape().record("sum", Tensor(1, 1, s), {a.id()}, [](const Tensor& g, std::span<Tensor* const> d) {
    for (auto& v : d[0]->data()) v += g[0];
  });
}

Var mean_cols(Var a) {
  const Tensor& x = a.value();
  if (x.cols() == 0) throw ShapeError("mean_cols: tensor has no columns");
  Tensor out(x.rows(), 1);
  const double inv = 1.0 / static_cast<double>(x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) s += x(r, c);
    out[r] = s * inv;
  }
  return a.tape().record("mean_cols", std::move(out), {a.id()}, [inv](const Tensor& g, std::span<Tensor* const> d) {
    Tensor& dx = *d[0];
    for (std::size_t r = 0; r < dx.rows(); ++r) {
      for (std::size_t c = 0; c < dx.cols(); ++c) dx(r, c) += g[r] * inv;
    }
  });
}

Var element(Var a, std::size_t r, std::size_t c) {
  const Tensor& x = a.value();
  if (r >= x.rows() || c >= x.cols()) {
    throw ShapeError("element: (" + std::to_string(r) + ", " + std::to_string(c) + ") outside " +
                     to_string(x.shape()));
  }
  return a.tape().record("element", Tensor(1, 1, x(r, c)), {a.id()},
                         [r, c](const Tensor& g, std::span<Tensor* const> d) { (*d[0])(r, c) += g[0]; });
}

Var cumprod_cols(Var a) {
  const Tensor& x = a.value();
  Tensor y(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double acc = 1.0;
    for (std::size_t c = 0; c < x.cols(); ++c) {
      acc *= x(r, c);
      y(r, c) = acc;
    }
  }
  const Tape* t = &a.tape();
  const auto ia = a.id();
  return a.tape().record("cumprod_cols", std::move(y), {ia}, [t, ia](const Tensor& g, std::span<Tensor* const> d) {
    const Tensor& x = t->value(ia);
    const std::size_t n = x.cols();
    for (std::size_t r = 0; r < x.rows(); ++r) {
      double prefix = 1.0;  // product of x(r, 0..j-1)
      for (std::size_t j = 0; j < n; ++j) {
        // d y_k / d x_j = prod_{i <= k, i != j} x_i for k >= j.
        double partial = prefix;
        double acc = g(r, j) * partial;
        for (std::size_t k = j + 1; k < n; ++k) {
          partial *= x(r, k);
          acc += g(r, k) * partial;
        }
        (*d[0])(r, j) += acc;
        prefix *= x(r, j);
      }
    }
  });
}

Var log_clamped(Var a, double floor) {
  const Tensor& x = a.value();
  Tensor y(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::log(std::max(x[i], floor));
  const Tape* t = &a.tape();
  const auto ia = a.id();
  return a.tape().record("log", std::move(y), {ia}, [t, ia, floor](const Tensor& g, std::span<Tensor* const> d) {
    const Tensor& x = t->value(ia);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (x[i] > floor) (*d[0])[i] += g[i] / x[i];
    }
  });
}

Var alpha_dropout(Var a, double p, DropoutKey key, bool training) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ContractError("alpha_dropout: rate must satisfy 0 <= p < 1, got " + std::to_string(p));
  }
  if (!training || p == 0.0) return a;
  const double keep = 1.0 - p;
  const double gain = 1.0 / std::sqrt(keep * (1.0 + p * kSaturation * kSaturation));
  const double offset = -gain * kSaturation * p;
  const CounterRng rng = CounterRng::keyed(key.seed, key.layer, key.step);
  const Tensor& x = a.value();
  Tensor y(x.rows(), x.cols());
  std::vector<bool> kept(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    kept[i] = rng.uniform(i) < keep;
    y[i] = gain * (kept[i] ? x[i] : kSaturation) + offset;
  }
  return a.tape().record("alpha_dropout", std::move(y), {a.id()},
                         [kept = std::move(kept), gain](const Tensor& g, std::span<Tensor* const> d) {
                           for (std::size_t i = 0; i < g.size(); ++i) {
                             if (kept[i]) (*d[0])[i] += gain * g[i];
                           }
                         });
}

}  // namespace mgct::numkit
