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


#include <sstream>

#include <gtest/gtest.h>

#include "kgqa/errors.hpp"
#include "kgqa/kg_store.hpp"
#include "test_util.hpp"

namespace kgqa {
namespace {

using testing::data_path;
using testing::toy_kg;

KnowledgeGraph parse(const std::string& text) {
  std::istringstream in(text);
  return KnowledgeGraph::parse(in, "inline");
}

Hop fwd(const KnowledgeGraph& kg, const char* p) { return {Direction::kForward, kg.predicate_id(p)}; }
Hop rev(const KnowledgeGraph& kg, const char* p) { return {Direction::kReverse, kg.predicate_id(p)}; }

TEST(LoadKg, AstronautFileCounts) {
  const auto kg = KnowledgeGraph::load(data_path("astronauts.tsv"));
  EXPECT_EQ(kg.entity_count(), 6u);
  EXPECT_EQ(kg.predicate_count(), 4u);
  EXPECT_EQ(kg.class_assertion_count(), 2u);
  EXPECT_EQ(kg.literal_count(), 1u);
}

TEST(LoadKg, IdsAreDenseInOrderOfAppearance) {
  const auto kg = parse("a\tp\tb\nb\tq\tc\n");
  EXPECT_EQ(kg.node_id("a"), 0u);
  EXPECT_EQ(kg.node_id("b"), 1u);
  EXPECT_EQ(kg.node_id("c"), 2u);
  EXPECT_EQ(kg.predicate_id("q"), 1u);
}

TEST(LoadKg, MalformedLineIsAParseErrorAtThatLine) {
  try {
    parse("a\tp\tb\n# fine\na\tb\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadKg, EmptyFileIsRejected) {
  EXPECT_THROW(parse("# only a comment\n\n"), DataError);
}

TEST(LoadKg, LiteralSubjectIsRejected) { EXPECT_THROW(parse("\"x\"\tp\tb\n"), ParseError); }

TEST(LoadKg, TypeOnlyFileHasNoAdjacency) {
  const auto kg = parse("a\trdf:type\tC\nb\trdf:type\tC\n");
  EXPECT_TRUE(kg.triples().empty());
  for (NodeId n = 0; n < kg.node_count(); ++n) {
    EXPECT_TRUE(kg.neighbors(n, Direction::kForward).empty());
    EXPECT_TRUE(kg.neighbors(n, Direction::kReverse).empty());
  }
  EXPECT_TRUE(kg.has_class(kg.node_id("a"), kg.node_id("C")));
  EXPECT_EQ(kg.class_assertion_count(), 2u);
}

TEST(LoadKg, IndicesReconstructTheTripleSet) {
  const auto& kg = toy_kg();
  std::size_t forward = 0, reverse = 0;
  for (NodeId n = 0; n < kg.node_count(); ++n) {
    for (const Edge& e : kg.neighbors(n, Direction::kForward)) {
      ++forward;
      EXPECT_TRUE(std::binary_search(kg.triples().begin(), kg.triples().end(),
                                     Triple{n, e.predicate, e.node}));
    }
    reverse += kg.neighbors(n, Direction::kReverse).size();
  }
  EXPECT_EQ(forward, kg.triples().size());
  EXPECT_EQ(reverse, kg.triples().size());
}

TEST(LoadKg, LoadingTwiceIsDeterministic) {
  const auto a = KnowledgeGraph::load(data_path("toy_kg.tsv"));
  const auto b = KnowledgeGraph::load(data_path("toy_kg.tsv"));
  ASSERT_EQ(a.node_count(), b.node_count());
  for (NodeId n = 0; n < a.node_count(); ++n) EXPECT_EQ(a.node_name(n), b.node_name(n));
  EXPECT_TRUE(std::equal(a.triples().begin(), a.triples().end(), b.triples().begin(),
                         b.triples().end()));
}

TEST(Neighbors, VostokProgramme) {
  const auto& kg = toy_kg();
  const NodeId v = kg.node_id("Vostok_Programme");
  EXPECT_TRUE(kg.neighbors(v, Direction::kForward).empty());
  const auto rev_edges = kg.neighbors(v, Direction::kReverse);
  std::set<std::pair<std::string, std::string>> got;
  for (const Edge& e : rev_edges) got.insert({kg.predicate_name(e.predicate), kg.node_name(e.node)});
  EXPECT_EQ(got, (std::set<std::pair<std::string, std::string>>{
                     {"mission", "Yuri_Gagarin"}, {"mission", "Valentina_Tereshkova"}}));
}

TEST(Neighbors, UnknownIdIsALookupError) {
  EXPECT_THROW(toy_kg().neighbors(100000, Direction::kForward), LookupError);
}

TEST(Neighbors, TypeOnlyNodeHasNoEdges) {
  const auto kg = parse("a\tp\tb\nc\trdf:type\tC\n");
  EXPECT_TRUE(kg.neighbors(kg.node_id("c"), Direction::kForward).empty());
  EXPECT_TRUE(kg.neighbors(kg.node_id("c"), Direction::kReverse).empty());
}

TEST(Execute, VostokBirthPlaces) {
  const auto& kg = toy_kg();
  QueryGraph g{{kg.node_id("Vostok_Programme"), {rev(kg, "mission"), fwd(kg, "birthPlace")}, {}},
               Intent::kSet,
               {}};
  EXPECT_EQ(execute(kg, g), AnswerSet::entity_set({"Klushino", "Maslennikovo"}));
  g.intent = Intent::kCount;
  EXPECT_EQ(execute(kg, g), AnswerSet::count(2));
}

TEST(Execute, BerlinIsTheCapitalOfGermany) {
  const auto& kg = toy_kg();
  QueryGraph g{{kg.node_id("Germany"), {fwd(kg, "capital")}, kg.node_id("Berlin")}, Intent::kAsk, {}};
  EXPECT_EQ(execute(kg, g), AnswerSet::boolean(true));
  g.chain.second_entity = kg.node_id("Hamburg");
  EXPECT_EQ(execute(kg, g), AnswerSet::boolean(false));
}

TEST(Execute, KeanuFilmsWithClassConstraint) {
  const auto& kg = toy_kg();
  QueryGraph g{{kg.node_id("Keanu_Reeves"), {rev(kg, "starring")}, {}},
               Intent::kSet,
               ClassConstraint{Placement::kLambda, kg.node_id("Film")}};
  EXPECT_EQ(execute(kg, g), AnswerSet::entity_set({"John_Wick"}));
}

TEST(Execute, AbsentPredicateGivesEmptyResult) {
  const auto& kg = toy_kg();
  QueryGraph g{{kg.node_id("Germany"), {Hop{Direction::kForward, 9999}}, {}}, Intent::kSet, {}};
  EXPECT_EQ(execute(kg, g), AnswerSet::entity_set({}));
}

TEST(Execute, LiteralsAreTerminal) {
  const auto kg = parse("a\tdate\t\"1\"\nb\tdate\t\"1\"\n");
  QueryGraph g{{kg.node_id("a"), {fwd(kg, "date"), rev(kg, "date")}, {}}, Intent::kSet, {}};
  EXPECT_EQ(execute(kg, g), AnswerSet::entity_set({}));
  g.chain.hops.pop_back();
  EXPECT_EQ(execute(kg, g), AnswerSet::entity_set({"\"1\""}));
}

}  // namespace
}  // namespace kgqa
