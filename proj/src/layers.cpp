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


#include "kgqa/layers.hpp"

#include <string>

#include "kgqa/errors.hpp"

namespace kgqa {

using diff::Var;

BiLstmOutput run_bilstm(const BiLstm& layer, std::span<const Var> inputs) {
  if (inputs.empty()) throw ArgumentError("bilstm over an empty sequence");
  const std::size_t steps = inputs.size();
  const std::size_t hidden = layer.hidden();
  diff::Tape& tape = inputs[0].tape();

  std::vector<Var> fwd(steps), bwd(steps);
  Var state = tape.zeros(2 * hidden);
  for (std::size_t t = 0; t < steps; ++t) {
    state = diff::lstm_cell(*layer.forward.w, *layer.forward.b, inputs[t], state);
    fwd[t] = diff::slice(state, 0, hidden);
  }
  state = tape.zeros(2 * hidden);
  for (std::size_t t = steps; t-- > 0;) {
    state = diff::lstm_cell(*layer.backward.w, *layer.backward.b, inputs[t], state);
    bwd[t] = diff::slice(state, 0, hidden);
  }

  BiLstmOutput out;
  out.states.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    const Var parts[] = {fwd[t], bwd[t]};
    out.states.push_back(diff::concat(parts));
  }
  if (steps == 1) {
    out.final = out.states[0];
  } else {
    const Var parts[] = {fwd[steps - 1], bwd[0]};
    out.final = diff::concat(parts);
  }
  return out;
}

Var run_conv(const ConvEncoder& layer, std::span<const Var> inputs) {
  if (inputs.size() < ConvEncoder::min_length()) {
    throw ArgumentError("convolutional encoder needs at least " +
                        std::to_string(ConvEncoder::min_length()) + " steps, got " +
                        std::to_string(inputs.size()));
  }
  const Var sequence = diff::stack(inputs);
  std::vector<Var> pooled;
  for (std::size_t k = 0; k < ConvEncoder::kWidths.size(); ++k) {
    const Var maps =
        diff::conv1d(*layer.filters[k], *layer.biases[k], sequence, ConvEncoder::kWidths[k]);
    pooled.push_back(diff::max_over_time(diff::tanh(maps)));
  }
  return diff::affine(*layer.out_w, *layer.out_b, diff::concat(pooled));
}

Var run_dense(const Dense& layer, Var x) { return diff::tanh(diff::affine(*layer.w, *layer.b, x)); }

}  // namespace kgqa
