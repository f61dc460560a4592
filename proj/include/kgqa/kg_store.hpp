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

// In-memory triple store with forward, reverse and class-membership indices.
//
// Node ids are dense from 0 in order of first appearance in the file; the
// same holds for predicate ids. Literals (objects starting with '"') receive
// node ids too but never have outgoing edges. Triples whose predicate is
// `rdf:type` populate only the class index and are never traversed as hops.

#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgqa/types.hpp"

namespace kgqa {

inline constexpr std::string_view kTypePredicate = "rdf:type";

struct Edge {
  PredicateId predicate = 0;
  NodeId node = 0;

  auto operator<=>(const Edge&) const = default;
};

struct Triple {
  NodeId subject = 0;
  PredicateId predicate = 0;
  NodeId object = 0;

  auto operator<=>(const Triple&) const = default;
};

struct StringTriple {
  std::string subject, predicate, object;
};

class KnowledgeGraph {
 public:
  // Reads `subject<TAB>predicate<TAB>object` lines; '#' lines are comments.
  static KnowledgeGraph load(const std::filesystem::path& path);
  static KnowledgeGraph parse(std::istream& in, const std::string& source);
  static KnowledgeGraph from_triples(std::span<const StringTriple> triples);

  std::size_t node_count() const { return nodes_.size(); }
  // Non-literal nodes.
  std::size_t entity_count() const { return nodes_.size() - literal_count_; }
  std::size_t literal_count() const { return literal_count_; }
  std::size_t predicate_count() const { return predicates_.size(); }
  std::size_t class_assertion_count() const { return class_assertions_; }

  // All distinct triples except type assertions, sorted.
  std::span<const Triple> triples() const { return triples_; }
  // Distinct type assertions (entity, rdf:type, class), sorted.
  std::span<const Triple> type_assertions() const { return type_triples_; }

  std::optional<NodeId> find_node(std::string_view iri) const;
  std::optional<PredicateId> find_predicate(std::string_view iri) const;
  NodeId node_id(std::string_view iri) const;            // throws LookupError
  PredicateId predicate_id(std::string_view iri) const;  // throws LookupError
  const std::string& node_name(NodeId id) const;
  const std::string& predicate_name(PredicateId id) const;
  bool is_literal(NodeId id) const;
  bool has_node(NodeId id) const { return id < nodes_.size(); }
  std::optional<PredicateId> type_predicate() const { return type_predicate_; }

  // Outgoing (forward) or incoming (reverse) non-type edges, sorted by
  // (predicate, node). Throws LookupError for unknown ids.
  std::span<const Edge> neighbors(NodeId node, Direction direction) const;

  // Nodes reached from `node` over one hop; empty for literals.
  std::vector<NodeId> step(NodeId node, Hop hop) const;

  std::span<const NodeId> classes_of(NodeId node) const;
  bool has_class(NodeId node, NodeId cls) const;
  // Every node used as the object of a type assertion, sorted by id.
  std::span<const NodeId> classes() const { return all_classes_; }

 private:
  KnowledgeGraph() = default;

  NodeId intern_node(const std::string& name);
  PredicateId intern_predicate(const std::string& name);
  void add(const std::string& s, const std::string& p, const std::string& o);
  void finish();

  std::vector<std::string> nodes_;
  std::vector<bool> literal_;
  std::size_t literal_count_ = 0;
  std::unordered_map<std::string, NodeId> node_index_;
  std::vector<std::string> predicates_;
  std::unordered_map<std::string, PredicateId> predicate_index_;
  std::optional<PredicateId> type_predicate_;

  std::vector<Triple> triples_;
  std::vector<Triple> type_triples_;
  std::vector<std::vector<Edge>> forward_;
  std::vector<std::vector<Edge>> reverse_;
  std::vector<std::vector<NodeId>> class_index_;
  std::vector<NodeId> all_classes_;
  std::size_t class_assertions_ = 0;
};

// Runs a query graph. Set intent yields the lambda bindings, count their
// cardinality, ask whether the chain pattern has any binding. Predicates
// that do not occur in the graph simply match nothing.
AnswerSet execute(const KnowledgeGraph& kg, const QueryGraph& graph);

// Bindings of the answer variable (or of the grounded terminal for fully
// grounded chains) after applying the class constraint.
std::vector<NodeId> bindings(const KnowledgeGraph& kg, const QueryGraph& graph);

// True iff the chain pattern has at least one match.
bool satisfiable(const KnowledgeGraph& kg, const CoreChain& chain);

}  // namespace kgqa
