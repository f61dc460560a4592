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

// Value types shared by the graph store, the query representation and the
// pipeline: identifiers, core chains, query graphs and answers.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kgqa {

using NodeId = std::uint32_t;
using PredicateId = std::uint32_t;

// Hop direction. Forward follows subject -> object and is written `+`;
// reverse follows object -> subject and is written `-`.
enum class Direction : std::uint8_t { kForward = 0, kReverse = 1 };

inline constexpr std::string_view kForwardSign = "+";
inline constexpr std::string_view kReverseSign = "-";

inline std::string_view sign(Direction d) {
  return d == Direction::kForward ? kForwardSign : kReverseSign;
}

struct Hop {
  Direction direction = Direction::kForward;
  PredicateId predicate = 0;

  auto operator<=>(const Hop&) const = default;
};

// Entity-rooted path of one or two hops. When `second_entity` is set the
// chain's terminal node is that entity.
struct CoreChain {
  NodeId root = 0;
  std::vector<Hop> hops;
  std::optional<NodeId> second_entity;

  bool operator==(const CoreChain&) const = default;
};

// Candidate ordering: hop sequence first, then grounding.
bool chain_less(const CoreChain& a, const CoreChain& b);

enum class Intent : std::uint8_t { kSet = 0, kCount = 1, kAsk = 2 };
enum class Placement : std::uint8_t { kNone = 0, kLambda = 1, kExistential = 2 };

std::string_view to_string(Intent intent);
std::string_view to_string(Placement placement);
Intent parse_intent(std::string_view text);
Placement parse_placement(std::string_view text);

struct ClassConstraint {
  Placement variable = Placement::kLambda;  // kLambda or kExistential
  NodeId cls = 0;

  bool operator==(const ClassConstraint&) const = default;
};

struct QueryGraph {
  CoreChain chain;
  Intent intent = Intent::kSet;
  std::optional<ClassConstraint> class_constraint;

  bool operator==(const QueryGraph&) const = default;
};

// Returns a description of the first violated invariant, if any.
std::optional<std::string> validate(const CoreChain& chain);
std::optional<std::string> validate(const QueryGraph& graph);

// True when the chain has an ungrounded node between root and terminal.
bool has_existential(const CoreChain& chain);
// True when the chain has an ungrounded answer node.
bool has_lambda(const CoreChain& chain);

// Result of executing a query graph. Entity answers are IRI strings.
class AnswerSet {
 public:
  enum class Kind : std::uint8_t { kEntitySet, kCount, kBoolean };

  AnswerSet() : payload_(std::set<std::string>{}) {}

  static AnswerSet entity_set(std::set<std::string> values) {
    AnswerSet a;
    a.payload_ = std::move(values);
    return a;
  }
  static AnswerSet count(std::uint64_t n) {
    AnswerSet a;
    a.payload_ = n;
    return a;
  }
  static AnswerSet boolean(bool b) {
    AnswerSet a;
    a.payload_ = b;
    return a;
  }

  Kind kind() const { return static_cast<Kind>(payload_.index()); }
  const std::set<std::string>& values() const { return std::get<0>(payload_); }
  std::uint64_t count_value() const { return std::get<1>(payload_); }
  bool boolean_value() const { return std::get<2>(payload_); }

  bool operator==(const AnswerSet&) const = default;

 private:
  std::variant<std::set<std::string>, std::uint64_t, bool> payload_;
};

std::string_view to_string(AnswerSet::Kind kind);

}  // namespace kgqa
