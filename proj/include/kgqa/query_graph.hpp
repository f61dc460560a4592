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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgqa/kg_store.hpp"
#include "kgqa/text.hpp"
#include "kgqa/types.hpp"

namespace kgqa {

// Fills the second hop slot of one-hop chains.
inline constexpr std::string_view kNoHopToken = "NO_HOP";

// Sign token followed by the predicate's surface form, for every hop. The
// root entity is not part of the sequence.
Tokens linearize(const CoreChain& chain, const KnowledgeGraph& kg, const SurfaceForms& forms);

// Tokens of hop `index` (1 or 2). Hop 2 of a one-hop chain is `NO_HOP`.
Tokens hop_tokens(const CoreChain& chain, int index, const KnowledgeGraph& kg,
                  const SurfaceForms& forms);

// Splits a linearized sequence back into (direction, surface tokens) pairs.
// Throws ArgumentError if the sequence does not start with a sign token.
std::vector<std::pair<Direction, Tokens>> parse_linearized(const Tokens& tokens);

// Single-line SPARQL text for a valid query graph; throws ArgumentError on
// invariant violations.
std::string to_query_text(const QueryGraph& graph, const KnowledgeGraph& kg);

// Readable form such as `Vostok_Programme -mission +birthPlace`.
std::string describe(const CoreChain& chain, const KnowledgeGraph& kg);

}  // namespace kgqa
