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

#include "kgqa/candidate_gen.hpp"

#include <algorithm>
#include <set>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

constexpr Direction kDirections[] = {Direction::kForward, Direction::kReverse};

}  // namespace

std::vector<CoreChain> generate_candidates(const KnowledgeGraph& kg,
                                           std::span<const NodeId> entities,
                                           const CandidateOptions& options) {
  if (entities.empty() || entities.size() > 2) {
    throw ArgumentError("candidate generation needs 1 or 2 entities, got " +
                        std::to_string(entities.size()));
  }
  for (NodeId e : entities) {
    if (!kg.has_node(e)) throw LookupError("unknown entity id " + std::to_string(e));
  }

  const NodeId root = entities[0];
  const std::optional<NodeId> target =
      entities.size() == 2 ? std::optional<NodeId>(entities[1]) : std::nullopt;
  std::set<std::vector<Hop>> found;
  if (kg.is_literal(root)) return {};

  for (Direction d1 : kDirections) {
    for (const Edge& e1 : kg.neighbors(root, d1)) {
      const Hop h1{d1, e1.predicate};
      if (!target || (e1.node == *target && !options.strict_two_entity)) {
        found.insert({h1});
      }
      if (kg.is_literal(e1.node)) continue;
      for (Direction d2 : kDirections) {
        for (const Edge& e2 : kg.neighbors(e1.node, d2)) {
          if (target && e2.node != *target) continue;
          found.insert({h1, Hop{d2, e2.predicate}});
        }
      }
    }
  }

  std::vector<CoreChain> out;
  out.reserve(found.size());
  for (const auto& hops : found) out.push_back(CoreChain{root, hops, target});
  // std::set already orders by hop sequence; root and target are shared.
  return out;
}

std::size_t chain_count(const KnowledgeGraph& kg, std::span<const NodeId> entities,
                        const CandidateOptions& options) {
  return generate_candidates(kg, entities, options).size();
}

}  // namespace kgqa
