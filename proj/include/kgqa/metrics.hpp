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


#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kgqa/types.hpp"

namespace kgqa {

// 1-based position of `gold` in `ranking`, or nullopt when absent.
std::optional<std::size_t> gold_rank(std::span<const std::size_t> ranking,
                                     std::optional<std::size_t> gold);

// A missing rank counts as a miss with reciprocal rank 0. Both throw
// ArgumentError on empty input.
double cca(std::span<const std::optional<std::size_t>> gold_ranks);
double mrr(std::span<const std::optional<std::size_t>> gold_ranks);

// Convenience forms over ranked candidate lists and gold indices.
double cca(const std::vector<std::vector<std::size_t>>& rankings,
           std::span<const std::optional<std::size_t>> gold);
double mrr(const std::vector<std::vector<std::size_t>>& rankings,
           std::span<const std::optional<std::size_t>> gold);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const Prf&) const = default;
};

// Entity sets: set precision/recall, (1,1,1) when both are empty and
// (0,0,0) when only one is. Counts and booleans score 1 on exact match and
// 0 otherwise, as do mismatched kinds.
Prf answer_prf(const AnswerSet& predicted, const AnswerSet& gold);

Prf macro_average(std::span<const Prf> scores);

}  // namespace kgqa
