// Copyright 2026 The kgqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense double-precision tensors with tape-based reverse-mode
// differentiation.
//
// Parameters live in `Tensor` objects that are never modified by a forward
// or backward pass: operations read them by const reference and the tape
// accumulates their gradients into a separate `Gradients` map. A frozen
// model can therefore be scored from several threads, each with its own
// `Tape`.
//
// Intermediate values are `Var` handles into a `Tape`. Vectors have shape
// {n}; sequences stacked over time have shape {T, d}.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgqa/random.hpp"

namespace kgqa::diff {

using Shape = std::vector<std::size_t>;

std::string to_string(const Shape& shape);
std::size_t element_count(const Shape& shape);

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> data);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  std::size_t rows() const { return shape_.empty() ? 0 : shape_[0]; }
  std::size_t cols() const { return rows() == 0 ? 0 : data_.size() / rows(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

 private:
  Shape shape_;
  std::vector<double> data_;
};

// Uniform(-b, b) with b = sqrt(6 / (fan_in + fan_out)). For a {rows, cols}
// matrix fan_in = cols and fan_out = rows; a vector of n counts as n x 1.
void glorot_uniform(Tensor& t, Random& rng);

// Per-parameter gradients, kept in the order parameters were first reached
// during the backward pass so reductions are reproducible.
class Gradients {
 public:
  // Zero-initialized on first use.
  std::span<double> accumulator(const Tensor& t);
  // Empty span when `t` was not reached; treat as zeros.
  std::span<const double> of(const Tensor& t) const;
  bool contains(const Tensor& t) const { return index_.count(&t) != 0; }

  std::size_t size() const { return entries_.size(); }
  double squared_norm() const;
  void scale(double factor);
  void add(const Gradients& other, double factor = 1.0);

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<std::pair<const Tensor*, std::vector<double>>> entries_;
  std::unordered_map<const Tensor*, std::size_t> index_;
};

class Tape;

class Var {
 public:
  Var() = default;

  bool valid() const { return tape_ != nullptr; }
  Tape& tape() const { return *tape_; }
  std::size_t id() const { return id_; }

  std::span<const double> value() const;
  const Shape& shape() const;
  std::size_t size() const { return value().size(); }
  // Requires a single element.
  double scalar() const;

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

class Tape {
 public:
  // Receives the id of the node being differentiated; reads its gradient
  // via grad(self) and adds into the gradients of its inputs.
  using Pullback = std::function<void(Tape&, std::size_t self)>;

  // With `record == false` no pullbacks are kept; backward is unavailable.
  explicit Tape(bool record = true) : record_(record) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const { return record_; }
  std::size_t size() const { return nodes_.size(); }

  Var constant(std::vector<double> values, Shape shape);
  Var constant(std::vector<double> values);
  Var zeros(std::size_t n);
  // Copy of a parameter whose gradient flows back into it.
  Var leaf(const Tensor& t);

  // Reverse accumulation from a scalar. Throws ArgumentError otherwise.
  Gradients backward(Var loss);

  // Building blocks for operations.
  Var record(Shape shape, std::vector<double> value, Pullback pullback);
  std::span<const double> value(std::size_t id) const { return nodes_[id].value; }
  const Shape& shape(std::size_t id) const { return nodes_[id].shape; }
  std::span<double> grad(std::size_t id) { return nodes_[id].grad; }
  std::span<double> param_grad(const Tensor& t) { return active_->accumulator(t); }

 private:
  struct Node {
    Shape shape;
    std::vector<double> value;
    std::vector<double> grad;
    Pullback pullback;
  };

  std::vector<Node> nodes_;
  bool record_;
  Gradients* active_ = nullptr;
};

// Primitives. Binary operations require both operands on the same tape and,
// for elementwise ones, equal shapes; violations raise DimensionError naming
// both shapes.
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double factor);
Var shift(Var a, double offset);
Var tanh(Var a);
Var logistic(Var a);
Var relu(Var a);
Var dot(Var a, Var b);
Var sum(Var a);
// Elementwise sum / mean of equally shaped values.
Var sum(std::span<const Var> values);
Var mean(std::span<const Var> values);

Var matvec(const Tensor& w, Var x);
Var affine(const Tensor& w, const Tensor& b, Var x);
// Row `i` of a {rows, cols} parameter matrix.
Var row(Tape& tape, const Tensor& matrix, std::size_t i);

Var concat(std::span<const Var> parts);
Var slice(Var a, std::size_t offset, std::size_t length);
// Stacks equally sized vectors into a {T, d} matrix, and back.
Var stack(std::span<const Var> rows);
std::vector<Var> unstack(Var matrix);

Var mean_over_time(Var matrix);
Var max_over_time(Var matrix);

Var softmax(Var a);
// sum_t weights[t] * vectors[t].
Var weighted_sum(Var weights, std::span<const Var> vectors);

// -(t log p + (1 - t) log(1 - p)) with p = logistic(s) clamped to
// [1e-12, 1 - 1e-12].
Var binary_cross_entropy(Var score, double target);
// -log softmax(logits)[label].
Var cross_entropy(Var logits, std::size_t label);

// Fused LSTM step. `w` is {4H, d + H}, `b` is {4H}; gate blocks are ordered
// input, forget, candidate, output. `state` and the result are [h ; c].
Var lstm_cell(const Tensor& w, const Tensor& b, Var x, Var state);

// Valid 1-D convolution over a {T, d} sequence with a {F, width * d}
// filter bank: result {T - width + 1, F}.
Var conv1d(const Tensor& w, const Tensor& b, Var sequence, std::size_t width);

// Rescales all gradients by max_norm / g when their global L2 norm g
// exceeds max_norm. Returns g.
double clip_gradients(Gradients& grads, double max_norm);

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t step = 0;

  struct Moments {
    std::vector<double> m, v;
  };
  std::unordered_map<const Tensor*, Moments> moments;
};

// Bias-corrected Adam update of every tensor in `params`; tensors without
// a gradient are updated with g = 0.
void adam_step(std::span<Tensor* const> params, const Gradients& grads, AdamState& state,
               double lr);

struct FdResult {
  double max_relative_error = 0.0;
  std::size_t parameter = 0;   // index into params of the worst coordinate
  std::size_t coordinate = 0;
  double analytic = 0.0;
  double numeric = 0.0;
};

// Compares backward() against central differences for every coordinate of
// every parameter. The relative error is |a - n| / max(1e-8, |a| + |n|).
FdResult fd_check(const std::function<Var(Tape&)>& loss, std::span<Tensor* const> params,
                  double h = 1e-4);

}  // namespace kgqa::diff
