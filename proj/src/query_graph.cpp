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

#include "kgqa/query_graph.hpp"

#include <tuple>

#include "kgqa/errors.hpp"

namespace kgqa {

bool chain_less(const CoreChain& a, const CoreChain& b) {
  return std::tie(a.hops, a.root, a.second_entity) < std::tie(b.hops, b.root, b.second_entity);
}

std::string_view to_string(Intent intent) {
  switch (intent) {
    case Intent::kSet:
      return "set";
    case Intent::kCount:
      return "count";
    case Intent::kAsk:
      return "ask";
  }
  return "?";
}

std::string_view to_string(Placement placement) {
  switch (placement) {
    case Placement::kNone:
      return "none";
    case Placement::kLambda:
      return "lambda";
    case Placement::kExistential:
      return "existential";
  }
  return "?";
}

std::string_view to_string(AnswerSet::Kind kind) {
  switch (kind) {
    case AnswerSet::Kind::kEntitySet:
      return "entity-set";
    case AnswerSet::Kind::kCount:
      return "count";
    case AnswerSet::Kind::kBoolean:
      return "boolean";
  }
  return "?";
}

Intent parse_intent(std::string_view text) {
  if (text == "set") return Intent::kSet;
  if (text == "count") return Intent::kCount;
  if (text == "ask") return Intent::kAsk;
  throw ArgumentError("unknown intent: " + std::string(text));
}

Placement parse_placement(std::string_view text) {
  if (text == "none") return Placement::kNone;
  if (text == "lambda") return Placement::kLambda;
  if (text == "existential") return Placement::kExistential;
  throw ArgumentError("unknown placement: " + std::string(text));
}

bool has_existential(const CoreChain& chain) {
  return chain.hops.size() == 2 && !chain.second_entity;
}

bool has_lambda(const CoreChain& chain) {
  return !(chain.hops.size() == 1 && chain.second_entity);
}

std::optional<std::string> validate(const CoreChain& chain) {
  if (chain.hops.empty() || chain.hops.size() > 2) {
    return "core chain must have 1 or 2 hops, has " + std::to_string(chain.hops.size());
  }
  return std::nullopt;
}

std::optional<std::string> validate(const QueryGraph& graph) {
  if (auto err = validate(graph.chain)) return err;
  if (graph.intent == Intent::kAsk && !graph.chain.second_entity) {
    return std::string("ask intent needs a second grounded entity");
  }
  if (graph.intent != Intent::kAsk && !has_lambda(graph.chain)) {
    return std::string("fully grounded chain only supports ask intent");
  }
  if (graph.class_constraint) {
    switch (graph.class_constraint->variable) {
      case Placement::kNone:
        return std::string("class constraint without a variable");
      case Placement::kExistential:
        if (!has_existential(graph.chain)) {
          return std::string("existential constraint needs an ungrounded middle node");
        }
        break;
      case Placement::kLambda:
        if (!has_lambda(graph.chain)) return std::string("chain has no lambda variable");
        break;
    }
  }
  return std::nullopt;
}

Tokens linearize(const CoreChain& chain, const KnowledgeGraph& kg, const SurfaceForms& forms) {
  Tokens out;
  for (const Hop& hop : chain.hops) {
    out.emplace_back(sign(hop.direction));
    for (auto& t : forms.lookup(kg.predicate_name(hop.predicate))) out.push_back(std::move(t));
  }
  return out;
}

Tokens hop_tokens(const CoreChain& chain, int index, const KnowledgeGraph& kg,
                  const SurfaceForms& forms) {
  if (index != 1 && index != 2) {
    throw ArgumentError("hop index must be 1 or 2, got " + std::to_string(index));
  }
  const auto i = static_cast<std::size_t>(index - 1);
  if (i >= chain.hops.size()) return {std::string(kNoHopToken)};
  Tokens out{std::string(sign(chain.hops[i].direction))};
  for (auto& t : forms.lookup(kg.predicate_name(chain.hops[i].predicate))) {
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::pair<Direction, Tokens>> parse_linearized(const Tokens& tokens) {
  std::vector<std::pair<Direction, Tokens>> out;
  for (const auto& t : tokens) {
    if (t == kForwardSign) {
      out.emplace_back(Direction::kForward, Tokens{});
    } else if (t == kReverseSign) {
      out.emplace_back(Direction::kReverse, Tokens{});
    } else if (out.empty()) {
      throw ArgumentError("linearized chain must start with a sign token");
    } else {
      out.back().second.push_back(t);
    }
  }
  return out;
}

namespace {

std::string term(const KnowledgeGraph& kg, NodeId id) { return "<" + kg.node_name(id) + ">"; }

std::string pattern(const std::string& from, const Hop& hop, const std::string& to,
                    const KnowledgeGraph& kg) {
  const std::string p = "<" + kg.predicate_name(hop.predicate) + ">";
  if (hop.direction == Direction::kForward) return from + " " + p + " " + to;
  return to + " " + p + " " + from;
}

}  // namespace

std::string to_query_text(const QueryGraph& graph, const KnowledgeGraph& kg) {
  if (auto err = validate(graph)) throw ArgumentError("invalid query graph: " + *err);
  const CoreChain& chain = graph.chain;

  // ?uri is always the lambda variable, ?x the existential one.
  const std::string root = term(kg, chain.root);
  const std::string terminal = chain.second_entity ? term(kg, *chain.second_entity) : "?uri";
  std::vector<std::string> body;
  if (chain.hops.size() == 1) {
    body.push_back(pattern(root, chain.hops[0], terminal, kg));
  } else {
    const std::string middle = chain.second_entity ? "?uri" : "?x";
    body.push_back(pattern(root, chain.hops[0], middle, kg));
    body.push_back(pattern(middle, chain.hops[1], terminal, kg));
  }
  if (graph.class_constraint) {
    const std::string var =
        graph.class_constraint->variable == Placement::kExistential ? "?x" : "?uri";
    body.push_back(var + " " + std::string(kTypePredicate) + " " +
                   term(kg, graph.class_constraint->cls));
  }

  std::string head;
  switch (graph.intent) {
    case Intent::kSet:
      head = "SELECT DISTINCT ?uri WHERE";
      break;
    case Intent::kCount:
      head = "SELECT (COUNT(DISTINCT ?uri) AS ?c) WHERE";
      break;
    case Intent::kAsk:
      head = "ASK WHERE";
      break;
  }
  std::string out = head + " { ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += " . ";
    out += body[i];
  }
  return out + " }";
}

std::string describe(const CoreChain& chain, const KnowledgeGraph& kg) {
  std::string out = kg.node_name(chain.root);
  for (const Hop& hop : chain.hops) {
    out += " ";
    out += sign(hop.direction);
    out += kg.predicate_name(hop.predicate);
  }
  if (chain.second_entity) out += " " + kg.node_name(*chain.second_entity);
  return out;
}

}  // namespace kgqa
