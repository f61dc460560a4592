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


// Question-answering records stored as JSON lines.

#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kgqa/kg_store.hpp"
#include "kgqa/text.hpp"
#include "kgqa/types.hpp"

namespace kgqa {

struct GoldHop {
  Direction direction = Direction::kForward;
  std::string predicate;

  bool operator==(const GoldHop&) const = default;
};

struct QAExample {
  std::string id;
  std::string question;
  Tokens tokens;  // tokenize(question)
  std::vector<std::string> entities;
  std::vector<GoldHop> gold_chain;
  Intent intent = Intent::kSet;
  Placement placement = Placement::kNone;
  std::optional<std::string> type_class;
  AnswerSet gold_answers;

  bool operator==(const QAExample&) const = default;
};

// Records are validated as they are read; the first invalid one raises
// ParseError with its line number and the offending field.
std::vector<QAExample> load_dataset(const std::filesystem::path& path);
std::vector<QAExample> parse_dataset(std::istream& in, const std::string& source);

std::string to_json_line(const QAExample& example);
void write_dataset(std::ostream& out, const std::vector<QAExample>& examples);

// Graph ids of the example's entities; nullopt when one is unknown.
std::optional<std::vector<NodeId>> resolve_entities(const QAExample& example,
                                                    const KnowledgeGraph& kg);
// The gold chain in graph ids, or nullopt when an entity or predicate is
// missing from the graph.
std::optional<CoreChain> resolve_gold_chain(const QAExample& example, const KnowledgeGraph& kg);

}  // namespace kgqa
