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


// Sequence encoders assembled from the differentiable primitives. Layers
// hold non-owning pointers to parameter tensors; the owner (a model's
// parameter set) must outlive them.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "kgqa/diffmath.hpp"

namespace kgqa {

// One LSTM direction: `w` is {4H, d + H}, `b` is {4H}.
struct LstmWeights {
  const diff::Tensor* w = nullptr;
  const diff::Tensor* b = nullptr;

  std::size_t hidden() const { return b->size() / 4; }
};

struct BiLstm {
  LstmWeights forward;
  LstmWeights backward;

  std::size_t hidden() const { return forward.hidden(); }
  std::size_t output_dim() const { return 2 * hidden(); }
};

struct BiLstmOutput {
  // states[t] = [forward_t ; backward_t]
  std::vector<diff::Var> states;
  // [forward_{T-1} ; backward_0]: the last state of each direction.
  diff::Var final;
};

// Throws ArgumentError on an empty sequence.
BiLstmOutput run_bilstm(const BiLstm& layer, std::span<const diff::Var> inputs);

// Convolutions of widths 3, 4 and 5 with F filters each, tanh, max over
// time, concatenation, then a linear map {out, 3F}.
struct ConvEncoder {
  static constexpr std::array<std::size_t, 3> kWidths = {3, 4, 5};
  std::array<const diff::Tensor*, 3> filters{};  // {F, width * d}
  std::array<const diff::Tensor*, 3> biases{};   // {F}
  const diff::Tensor* out_w = nullptr;           // {out, 3F}
  const diff::Tensor* out_b = nullptr;           // {out}

  static constexpr std::size_t min_length() { return 5; }
};

// `inputs` must hold at least min_length() vectors; shorter sequences raise
// ArgumentError.
diff::Var run_conv(const ConvEncoder& layer, std::span<const diff::Var> inputs);

// tanh(w x + b)
struct Dense {
  const diff::Tensor* w = nullptr;
  const diff::Tensor* b = nullptr;
};

diff::Var run_dense(const Dense& layer, diff::Var x);

}  // namespace kgqa
