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


#include "kgqa/dataset.hpp"

#include <fstream>

#include "json.hpp"
#include "kgqa/errors.hpp"

namespace kgqa {

using nlohmann::json;

namespace {

class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw RecordError(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_string()) throw RecordError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

AnswerSet parse_answers(const json& v) {
  if (!v.is_object()) throw RecordError("field 'gold_answers' must be an object");
  const std::string kind = string_field(v, "kind");
  if (kind == "entity-set") {
    const json& values = field(v, "values");
    if (!values.is_array()) throw RecordError("field 'gold_answers.values' must be an array");
    std::set<std::string> out;
    for (const json& x : values) {
      if (!x.is_string()) throw RecordError("field 'gold_answers.values' must hold strings");
      out.insert(x.get<std::string>());
    }
    return AnswerSet::entity_set(std::move(out));
  }
  if (kind == "count") {
    const json& value = field(v, "value");
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
      throw RecordError("field 'gold_answers.value' must be a non-negative integer");
    }
    return AnswerSet::count(value.get<std::uint64_t>());
  }
  if (kind == "boolean") {
    const json& value = field(v, "value");
    if (!value.is_boolean()) throw RecordError("field 'gold_answers.value' must be a boolean");
    return AnswerSet::boolean(value.get<bool>());
  }
  throw RecordError("field 'gold_answers.kind' has unknown value '" + kind + "'");
}

QAExample parse_record(const json& r) {
  if (!r.is_object()) throw RecordError("record must be a JSON object");
  QAExample ex;
  ex.id = string_field(r, "id");
  ex.question = string_field(r, "question");
  ex.tokens = tokenize(ex.question);

  const json& entities = field(r, "entities");
  if (!entities.is_array()) throw RecordError("field 'entities' must be an array");
  for (const json& e : entities) {
    if (!e.is_string()) throw RecordError("field 'entities' must hold strings");
    ex.entities.push_back(e.get<std::string>());
  }
  if (ex.entities.empty() || ex.entities.size() > 2) {
    throw RecordError("field 'entities' must hold 1 or 2 IRIs, got " +
                      std::to_string(ex.entities.size()));
  }

  const json& chain = field(r, "gold_chain");
  if (!chain.is_array()) throw RecordError("field 'gold_chain' must be an array");
  for (const json& h : chain) {
    if (!h.is_object()) throw RecordError("field 'gold_chain' must hold objects");
    const std::string dir = string_field(h, "dir");
    GoldHop hop;
    if (dir == kForwardSign) {
      hop.direction = Direction::kForward;
    } else if (dir == kReverseSign) {
      hop.direction = Direction::kReverse;
    } else {
      throw RecordError("field 'gold_chain.dir' must be \"+\" or \"-\"");
    }
    hop.predicate = string_field(h, "predicate");
    ex.gold_chain.push_back(std::move(hop));
  }
  if (ex.gold_chain.empty() || ex.gold_chain.size() > 2) {
    throw RecordError("field 'gold_chain' must hold 1 or 2 hops");
  }

  try {
    ex.intent = parse_intent(string_field(r, "intent"));
  } catch (const ArgumentError& e) {
    throw RecordError(std::string("field 'intent': ") + e.what());
  }

  const json& tc = field(r, "type_constraint");
  if (!tc.is_object()) throw RecordError("field 'type_constraint' must be an object");
  try {
    ex.placement = parse_placement(string_field(tc, "placement"));
  } catch (const ArgumentError& e) {
    throw RecordError(std::string("field 'type_constraint.placement': ") + e.what());
  }
  const json& cls = field(tc, "class");
  if (cls.is_string()) {
    ex.type_class = cls.get<std::string>();
  } else if (!cls.is_null()) {
    throw RecordError("field 'type_constraint.class' must be a string or null");
  }
  if ((ex.placement == Placement::kNone) != !ex.type_class.has_value()) {
    throw RecordError("field 'type_constraint': class must be null exactly when placement is none");
  }

  ex.gold_answers = parse_answers(field(r, "gold_answers"));
  return ex;
}

}  // namespace

std::vector<QAExample> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path.string());
  return parse_dataset(in, path.string());
}

std::vector<QAExample> parse_dataset(std::istream& in, const std::string& source) {
  std::vector<QAExample> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, number, std::string("invalid JSON: ") + e.what());
    }
    try {
      out.push_back(parse_record(record));
    } catch (const RecordError& e) {
      throw ParseError(source, number, e.what());
    }
  }
  return out;
}

std::string to_json_line(const QAExample& ex) {
  json r;
  r["id"] = ex.id;
  r["question"] = ex.question;
  r["entities"] = ex.entities;
  json chain = json::array();
  for (const auto& h : ex.gold_chain) {
    chain.push_back({{"dir", std::string(sign(h.direction))}, {"predicate", h.predicate}});
  }
  r["gold_chain"] = chain;
  r["intent"] = std::string(to_string(ex.intent));
  r["type_constraint"] = {{"placement", std::string(to_string(ex.placement))},
                          {"class", ex.type_class ? json(*ex.type_class) : json(nullptr)}};
  json answers;
  answers["kind"] = std::string(to_string(ex.gold_answers.kind()));
  switch (ex.gold_answers.kind()) {
    case AnswerSet::Kind::kEntitySet:
      answers["values"] = ex.gold_answers.values();
      break;
    case AnswerSet::Kind::kCount:
      answers["value"] = ex.gold_answers.count_value();
      break;
    case AnswerSet::Kind::kBoolean:
      answers["value"] = ex.gold_answers.boolean_value();
      break;
  }
  r["gold_answers"] = answers;
  return r.dump();
}

void write_dataset(std::ostream& out, const std::vector<QAExample>& examples) {
  for (const auto& ex : examples) out << to_json_line(ex) << '\n';
}

std::optional<std::vector<NodeId>> resolve_entities(const QAExample& example,
                                                    const KnowledgeGraph& kg) {
  std::vector<NodeId> ids;
  for (const auto& e : example.entities) {
    auto id = kg.find_node(e);
    if (!id) return std::nullopt;
    ids.push_back(*id);
  }
  return ids;
}

std::optional<CoreChain> resolve_gold_chain(const QAExample& example, const KnowledgeGraph& kg) {
  auto ids = resolve_entities(example, kg);
  if (!ids) return std::nullopt;
  CoreChain chain;
  chain.root = (*ids)[0];
  if (ids->size() == 2) chain.second_entity = (*ids)[1];
  for (const auto& h : example.gold_chain) {
    auto p = kg.find_predicate(h.predicate);
    if (!p) return std::nullopt;
    chain.hops.push_back(Hop{h.direction, *p});
  }
  return chain;
}

}  // namespace kgqa
