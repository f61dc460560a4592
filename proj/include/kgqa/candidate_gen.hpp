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

#include <span>
#include <vector>

#include "kgqa/kg_store.hpp"
#include "kgqa/types.hpp"

namespace kgqa {

struct CandidateOptions {
  // With two linked entities, keep only the two-hop chains between them.
  bool strict_two_entity = false;
};

// Every distinct core chain of one or two hops realized in the graph.
//
// One entity: all paths from it, following edges both ways. Two entities:
// chains rooted at the first whose terminal is the second (two-hop chains
// leave the answer node in between; direct one-hop links are kept unless
// `strict_two_entity`). Literals end a path. Output is sorted by hop
// sequence and free of duplicates.
std::vector<CoreChain> generate_candidates(const KnowledgeGraph& kg,
                                           std::span<const NodeId> entities,
                                           const CandidateOptions& options = {});

std::size_t chain_count(const KnowledgeGraph& kg, std::span<const NodeId> entities,
                        const CandidateOptions& options = {});

}  // namespace kgqa
