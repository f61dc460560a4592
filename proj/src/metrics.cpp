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


#include "kgqa/metrics.hpp"

#include <algorithm>
#include <iterator>

#include "kgqa/errors.hpp"

namespace kgqa {

std::optional<std::size_t> gold_rank(std::span<const std::size_t> ranking,
                                     std::optional<std::size_t> gold) {
  if (!gold) return std::nullopt;
  auto it = std::find(ranking.begin(), ranking.end(), *gold);
  if (it == ranking.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ranking.begin()) + 1;
}

double cca(std::span<const std::optional<std::size_t>> gold_ranks) {
  if (gold_ranks.empty()) throw ArgumentError("cca of an empty list");
  std::size_t hits = 0;
  for (const auto& r : gold_ranks) hits += (r && *r == 1) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(gold_ranks.size());
}

double mrr(std::span<const std::optional<std::size_t>> gold_ranks) {
  if (gold_ranks.empty()) throw ArgumentError("mrr of an empty list");
  double total = 0.0;
  for (const auto& r : gold_ranks) total += r ? 1.0 / static_cast<double>(*r) : 0.0;
  return total / static_cast<double>(gold_ranks.size());
}

namespace {

std::vector<std::optional<std::size_t>> ranks_of(
    const std::vector<std::vector<std::size_t>>& rankings,
    std::span<const std::optional<std::size_t>> gold) {
  if (rankings.size() != gold.size()) {
    throw ArgumentError("rankings and gold indices differ in length");
  }
  std::vector<std::optional<std::size_t>> out;
  out.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) out.push_back(gold_rank(rankings[i], gold[i]));
  return out;
}

}  // namespace

double cca(const std::vector<std::vector<std::size_t>>& rankings,
           std::span<const std::optional<std::size_t>> gold) {
  return cca(ranks_of(rankings, gold));
}

double mrr(const std::vector<std::vector<std::size_t>>& rankings,
           std::span<const std::optional<std::size_t>> gold) {
  return mrr(ranks_of(rankings, gold));
}

Prf answer_prf(const AnswerSet& predicted, const AnswerSet& gold) {
  if (predicted.kind() != gold.kind()) return {};
  switch (gold.kind()) {
    case AnswerSet::Kind::kCount:
    case AnswerSet::Kind::kBoolean:
      return predicted == gold ? Prf{1.0, 1.0, 1.0} : Prf{};
    case AnswerSet::Kind::kEntitySet:
      break;
  }
  const auto& p = predicted.values();
  const auto& g = gold.values();
  if (p.empty() && g.empty()) return {1.0, 1.0, 1.0};
  if (p.empty() || g.empty()) return {};
  std::vector<std::string> common;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(common));
  Prf out;
  out.precision = static_cast<double>(common.size()) / static_cast<double>(p.size());
  out.recall = static_cast<double>(common.size()) / static_cast<double>(g.size());
  if (out.precision + out.recall > 0.0) {
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

Prf macro_average(std::span<const Prf> scores) {
  if (scores.empty()) return {};
  Prf out;
  for (const auto& s : scores) {
    out.precision += s.precision;
    out.recall += s.recall;
    out.f1 += s.f1;
  }
  const double n = static_cast<double>(scores.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  return out;
}

}  // namespace kgqa
