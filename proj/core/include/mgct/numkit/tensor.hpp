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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mgct::numkit {

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(Shape s);

/// Dense row-major matrix of 64-bit floats.
///
/// Tensor is a plain value: copying copies the data. Gradient-tape
/// participation is tracked separately by `Var` handles, so the same
/// Tensor can be bound as a parameter on many tapes.
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::size_t rows, std::size_t cols);
  Tensor(std::size_t rows, std::size_t cols, double fill);
  // Throws ShapeError when data.size() != rows * cols.
  Tensor(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Tensor identity(std::size_t n);
  static Tensor from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor column(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  Shape shape() const { return {rows_, cols_}; }
  bool empty() const { return data_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Tensor transposed() const;
  Tensor col(std::size_t c) const;
  bool all_finite() const;

  void fill(double v);
  // this += other * scale, shapes must agree.
  void add_scaled(const Tensor& other, double scale = 1.0);

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Tape-free kernels shared by the forward and backward passes.
Tensor matmul(const Tensor& a, const Tensor& b);
// a^T * b without materializing the transpose.
Tensor matmul_tn(const Tensor& a, const Tensor& b);
// a * b^T without materializing the transpose.
Tensor matmul_nt(const Tensor& a, const Tensor& b);

double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace mgct::numkit
