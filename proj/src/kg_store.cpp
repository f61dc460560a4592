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

#include "kgqa/kg_store.hpp"

#include <algorithm>
#include <fstream>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

KnowledgeGraph KnowledgeGraph::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open knowledge graph " + path.string());
  return parse(in, path.string());
}

KnowledgeGraph KnowledgeGraph::parse(std::istream& in, const std::string& source) {
  KnowledgeGraph kg;
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw ParseError(source, line_no, "expected 3 tab-separated columns");
    }
    std::string s = line.substr(0, t1);
    std::string p = line.substr(t1 + 1, t2 - t1 - 1);
    std::string o = line.substr(t2 + 1);
    if (s.empty() || p.empty() || o.empty()) throw ParseError(source, line_no, "empty column");
    if (s[0] == '"') throw ParseError(source, line_no, "literal in subject position");
    kg.add(s, p, o);
    ++count;
  }
  if (count == 0) throw DataError(source + ": knowledge graph is empty");
  kg.finish();
  return kg;
}

KnowledgeGraph KnowledgeGraph::from_triples(std::span<const StringTriple> triples) {
  if (triples.empty()) throw DataError("knowledge graph is empty");
  KnowledgeGraph kg;
  for (const auto& t : triples) {
    if (t.subject.empty() || t.predicate.empty() || t.object.empty()) {
      throw DataError("triple with empty component");
    }
    if (t.subject[0] == '"') throw DataError("literal in subject position: " + t.subject);
    kg.add(t.subject, t.predicate, t.object);
  }
  kg.finish();
  return kg;
}

NodeId KnowledgeGraph::intern_node(const std::string& name) {
  auto [it, inserted] = node_index_.try_emplace(name, static_cast<NodeId>(nodes_.size()));
  if (inserted) {
    nodes_.push_back(name);
    const bool literal = name[0] == '"';
    literal_.push_back(literal);
    if (literal) ++literal_count_;
  }
  return it->second;
}

PredicateId KnowledgeGraph::intern_predicate(const std::string& name) {
  auto [it, inserted] =
      predicate_index_.try_emplace(name, static_cast<PredicateId>(predicates_.size()));
  if (inserted) {
    predicates_.push_back(name);
    if (name == kTypePredicate) type_predicate_ = it->second;
  }
  return it->second;
}

void KnowledgeGraph::add(const std::string& s, const std::string& p, const std::string& o) {
  const NodeId subject = intern_node(s);
  const PredicateId predicate = intern_predicate(p);
  const NodeId object = intern_node(o);
  if (p == kTypePredicate) {
    type_triples_.push_back({subject, predicate, object});
  } else {
    triples_.push_back({subject, predicate, object});
  }
}

void KnowledgeGraph::finish() {
  sort_unique(triples_);
  sort_unique(type_triples_);
  forward_.assign(nodes_.size(), {});
  reverse_.assign(nodes_.size(), {});
  class_index_.assign(nodes_.size(), {});
  for (const Triple& t : triples_) {
    forward_[t.subject].push_back({t.predicate, t.object});
    reverse_[t.object].push_back({t.predicate, t.subject});
  }
  for (auto& edges : forward_) std::sort(edges.begin(), edges.end());
  for (auto& edges : reverse_) std::sort(edges.begin(), edges.end());
  for (const Triple& t : type_triples_) {
    class_index_[t.subject].push_back(t.object);
    all_classes_.push_back(t.object);
  }
  for (auto& classes : class_index_) sort_unique(classes);
  sort_unique(all_classes_);
  class_assertions_ = type_triples_.size();
}

std::optional<NodeId> KnowledgeGraph::find_node(std::string_view iri) const {
  if (auto it = node_index_.find(std::string(iri)); it != node_index_.end()) return it->second;
  return std::nullopt;
}

std::optional<PredicateId> KnowledgeGraph::find_predicate(std::string_view iri) const {
  if (auto it = predicate_index_.find(std::string(iri)); it != predicate_index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

NodeId KnowledgeGraph::node_id(std::string_view iri) const {
  if (auto id = find_node(iri)) return *id;
  throw LookupError("unknown entity: " + std::string(iri));
}

PredicateId KnowledgeGraph::predicate_id(std::string_view iri) const {
  if (auto id = find_predicate(iri)) return *id;
  throw LookupError("unknown predicate: " + std::string(iri));
}

const std::string& KnowledgeGraph::node_name(NodeId id) const {
  if (id >= nodes_.size()) throw LookupError("unknown node id " + std::to_string(id));
  return nodes_[id];
}

const std::string& KnowledgeGraph::predicate_name(PredicateId id) const {
  if (id >= predicates_.size()) throw LookupError("unknown predicate id " + std::to_string(id));
  return predicates_[id];
}

bool KnowledgeGraph::is_literal(NodeId id) const {
  if (id >= nodes_.size()) throw LookupError("unknown node id " + std::to_string(id));
  return literal_[id];
}

std::span<const Edge> KnowledgeGraph::neighbors(NodeId node, Direction direction) const {
  if (node >= nodes_.size()) throw LookupError("unknown node id " + std::to_string(node));
  return direction == Direction::kForward ? forward_[node] : reverse_[node];
}

std::vector<NodeId> KnowledgeGraph::step(NodeId node, Hop hop) const {
  std::vector<NodeId> out;
  if (is_literal(node)) return out;
  const auto edges = neighbors(node, hop.direction);
  auto lo = std::lower_bound(edges.begin(), edges.end(), Edge{hop.predicate, 0});
  for (; lo != edges.end() && lo->predicate == hop.predicate; ++lo) out.push_back(lo->node);
  return out;
}

std::span<const NodeId> KnowledgeGraph::classes_of(NodeId node) const {
  if (node >= nodes_.size()) throw LookupError("unknown node id " + std::to_string(node));
  return class_index_[node];
}

bool KnowledgeGraph::has_class(NodeId node, NodeId cls) const {
  const auto classes = classes_of(node);
  return std::binary_search(classes.begin(), classes.end(), cls);
}

std::vector<NodeId> bindings(const KnowledgeGraph& kg, const QueryGraph& graph) {
  const CoreChain& chain = graph.chain;
  if (chain.hops.empty()) return {};
  const auto& constraint = graph.class_constraint;
  auto passes = [&](NodeId n, Placement at) {
    return !constraint || constraint->variable != at || kg.has_class(n, constraint->cls);
  };

  std::vector<NodeId> out;
  const std::vector<NodeId> first = kg.step(chain.root, chain.hops[0]);
  if (chain.hops.size() == 1) {
    for (NodeId n : first) {
      if (chain.second_entity && n != *chain.second_entity) continue;
      if (passes(n, Placement::kLambda)) out.push_back(n);
    }
  } else {
    for (NodeId mid : first) {
      const std::vector<NodeId> ends = kg.step(mid, chain.hops[1]);
      if (chain.second_entity) {
        // The answer node sits between the two grounded entities.
        if (std::binary_search(ends.begin(), ends.end(), *chain.second_entity) &&
            passes(mid, Placement::kLambda)) {
          out.push_back(mid);
        }
        continue;
      }
      if (!passes(mid, Placement::kExistential)) continue;
      for (NodeId end : ends) {
        if (passes(end, Placement::kLambda)) out.push_back(end);
      }
    }
  }
  sort_unique(out);
  return out;
}

bool satisfiable(const KnowledgeGraph& kg, const CoreChain& chain) {
  return !bindings(kg, QueryGraph{chain, Intent::kAsk, std::nullopt}).empty();
}

AnswerSet execute(const KnowledgeGraph& kg, const QueryGraph& graph) {
  const std::vector<NodeId> found = bindings(kg, graph);
  switch (graph.intent) {
    case Intent::kAsk:
      return AnswerSet::boolean(!found.empty());
    case Intent::kCount:
      return AnswerSet::count(found.size());
    case Intent::kSet:
      break;
  }
  std::set<std::string> values;
  for (NodeId n : found) values.insert(kg.node_name(n));
  return AnswerSet::entity_set(std::move(values));
}

}  // namespace kgqa
