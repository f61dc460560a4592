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


// Small random model instances shared by the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "kgqa/diffmath.hpp"
#include "kgqa/encoders.hpp"
#include "kgqa/random.hpp"

namespace kgqa::fixtures {

inline const std::vector<std::string>& words() {
  static const std::vector<std::string> w{"who", "is", "the", "capital", "of", "birth",
                                          "place", "city", "mission", "wife", "film", "starring"};
  return w;
}

inline const std::vector<std::string>& predicates() {
  static const std::vector<std::string> p{"capital", "birthPlace", "mission", "spouse", "starring"};
  return p;
}

inline std::vector<std::string> all_units() {
  std::vector<std::string> u;
  for (const auto& p : predicates()) {
    u.push_back(predicate_unit(Direction::kForward, p));
    u.push_back(predicate_unit(Direction::kReverse, p));
  }
  std::sort(u.begin(), u.end());
  return u;
}

inline Vocabulary small_vocabulary() {
  Vocabulary v;
  for (const auto& w : words()) v.add(w);
  return v;
}

// Dimensions small enough for exhaustive finite differences; d == 2H keeps
// the slot model valid.
inline ModelConfig small_config(ModelKind kind, std::uint64_t seed, bool share = false) {
  ModelConfig c;
  c.kind = kind;
  c.embedding_dim = 6;
  c.hidden = 3;
  c.cnn_filters = 2;
  c.dam_hidden = 4;
  c.share_encoders = share;
  c.seed = seed;
  return c;
}

inline RankingModel small_model(ModelKind kind, std::uint64_t seed, bool share = false) {
  return RankingModel(small_config(kind, seed, share), small_vocabulary(), all_units());
}

inline Tokens random_question(Random& rng, std::size_t length) {
  Tokens t;
  for (std::size_t i = 0; i < length; ++i) t.push_back(words()[rng.index(words().size())]);
  return t;
}

// A chain input built directly from signed predicates, without a graph.
inline ChainInput chain_input(const std::vector<std::pair<Direction, std::string>>& hops) {
  ChainInput c;
  for (std::size_t i = 0; i < hops.size(); ++i) {
    const auto& [dir, pred] = hops[i];
    Tokens hop{std::string(sign(dir))};
    for (auto& t : surface_form(pred)) hop.push_back(t);
    c.linear.insert(c.linear.end(), hop.begin(), hop.end());
    c.hops[i] = hop;
    c.units.push_back(predicate_unit(dir, pred));
  }
  if (hops.size() == 1) c.hops[1] = {"NO_HOP"};
  return c;
}

inline ChainInput random_chain(Random& rng, std::size_t length) {
  std::vector<std::pair<Direction, std::string>> hops;
  for (std::size_t i = 0; i < length; ++i) {
    hops.emplace_back(rng.index(2) ? Direction::kForward : Direction::kReverse,
                      predicates()[rng.index(predicates().size())]);
  }
  return chain_input(hops);
}

// Finite-difference check of sim on a random 4-token question and 2-hop
// chain, over every trainable tensor of a small model.
inline diff::FdResult fd_check_instance(ModelKind kind, std::uint64_t seed) {
  RankingModel model = small_model(kind, seed);
  Random rng(seed * 7919 + 13);
  const Tokens q = random_question(rng, 4);
  const ChainInput c = random_chain(rng, 2);
  auto loss = [&](diff::Tape& tape) {
    Scorer scorer(model, tape);
    return scorer.sim(q, c);
  };
  const auto params = model.parameters().unique();
  return diff::fd_check(loss, params);
}

}  // namespace kgqa::fixtures
