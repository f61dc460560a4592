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


#include <cstdio>
#include <filesystem>
#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kgqa/checkpoint.hpp"
#include "kgqa/dataset.hpp"
#include "kgqa/errors.hpp"
#include "kgqa/metrics.hpp"
#include "kgqa/pipeline.hpp"
#include "test_util.hpp"

namespace kgqa {
namespace {

using testing::toy_kg;

const std::vector<QAExample>& questions() {
  static const auto q = load_dataset(testing::data_path("toy_dataset.jsonl"));
  return q;
}

const char* kRecord =
    R"({"id": "q1", "question": "Who is the wife of Barack Obama?", "entities": ["Barack_Obama"], )"
    R"("gold_chain": [{"dir": "+", "predicate": "spouse"}], "intent": "set", )"
    R"("type_constraint": {"placement": "none", "class": null}, )"
    R"("gold_answers": {"kind": "entity-set", "values": ["Michelle_Obama"]}})";

TEST(Dataset, ToyFilesLoad) {
  EXPECT_EQ(questions().size(), 50u);
  EXPECT_EQ(load_dataset(testing::data_path("toy_finetune.jsonl")).size(), 20u);
  const auto& v = questions()[0];
  EXPECT_EQ(v.id, "toy-000");
  EXPECT_EQ(v.gold_chain.size(), 2u);
  EXPECT_EQ(v.gold_chain[0], (GoldHop{Direction::kReverse, "mission"}));
  EXPECT_EQ(v.tokens, tokenize(v.question));
}

TEST(Dataset, ParsesARecord) {
  std::istringstream in(std::string(kRecord) + "\n");
  const auto d = parse_dataset(in, "mem");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].entities, (std::vector<std::string>{"Barack_Obama"}));
  EXPECT_EQ(d[0].gold_answers, AnswerSet::entity_set({"Michelle_Obama"}));
  EXPECT_EQ(d[0].placement, Placement::kNone);
  EXPECT_FALSE(d[0].type_class);
}

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_dataset(in, "mem");
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string with(std::string record, const std::string& from, const std::string& to) {
  const auto at = record.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return record.replace(at, from.size(), to);
}

TEST(Dataset, RejectsInvalidRecordsWithLineNumbers) {
  const std::string ok = std::string(kRecord) + "\n";
  const std::string three = with(kRecord, R"(["Barack_Obama"])", R"(["A", "B", "C"])");
  EXPECT_EQ(error_line(ok + ok + three + "\n"), 3u);
  try {
    std::istringstream in(ok + three);
    parse_dataset(in, "mem");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("entities"), std::string::npos);
  }
  EXPECT_EQ(error_line(with(kRecord, R"("intent": "set")", R"("intent": "list")")), 1u);
  EXPECT_EQ(error_line(with(kRecord, R"("class": null)", R"("class": "Person")")), 1u);
  EXPECT_EQ(error_line(with(kRecord, R"("placement": "none")", R"("placement": "lambda")")), 1u);
  EXPECT_EQ(error_line(with(kRecord, R"("dir": "+")", R"("dir": "*")")), 1u);
  EXPECT_EQ(error_line(ok + "{not json\n"), 2u);
  EXPECT_EQ(error_line(with(kRecord, R"([{"dir": "+", "predicate": "spouse"}])", "[]")), 1u);
}

TEST(Dataset, RoundTripsThroughJsonLines) {
  std::stringstream buf;
  write_dataset(buf, questions());
  const auto back = parse_dataset(buf, "mem");
  EXPECT_EQ(back, questions());
  EXPECT_EQ(to_json_line(back[16]), to_json_line(questions()[16]));
}

TEST(Dataset, ResolvesAgainstTheGraph) {
  const auto& kg = toy_kg();
  for (const auto& q : questions()) {
    EXPECT_TRUE(resolve_entities(q, kg)) << q.id;
    const auto chain = resolve_gold_chain(q, kg);
    ASSERT_TRUE(chain) << q.id;
    const Placement p = q.placement;
    QueryGraph g{*chain, q.intent, {}};
    if (p != Placement::kNone) g.class_constraint = ClassConstraint{p, kg.node_id(*q.type_class)};
    EXPECT_EQ(execute(kg, g), q.gold_answers) << q.id;
  }
  QAExample missing = questions()[0];
  missing.entities = {"Atlantis"};
  EXPECT_FALSE(resolve_entities(missing, kg));
}

TEST(Metrics, WorkedExample) {
  const std::optional<std::size_t> ranks[] = {1, 2, 4};
  EXPECT_DOUBLE_EQ(cca(ranks), 1.0 / 3);
  EXPECT_NEAR(mrr(ranks), (1 + 0.5 + 0.25) / 3, 1e-15);
  EXPECT_NEAR(mrr(ranks), 0.583333333333333, 1e-12);
  EXPECT_THROW(cca(std::span<const std::optional<std::size_t>>{}), ArgumentError);
}

TEST(Metrics, GoldRank) {
  const std::size_t ranking[] = {3, 0, 2, 1};
  EXPECT_EQ(gold_rank(ranking, 2), 3u);
  EXPECT_EQ(gold_rank(ranking, 7), std::nullopt);
  EXPECT_EQ(gold_rank(ranking, std::nullopt), std::nullopt);
}

TEST(Metrics, MatchNaiveDefinitions) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::vector<std::size_t>> rankings(n);
    std::vector<std::optional<std::size_t>> gold(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = rng() % 8;
      rankings[i].resize(m);
      std::iota(rankings[i].begin(), rankings[i].end(), 0);
      std::shuffle(rankings[i].begin(), rankings[i].end(), rng);
      if (rng() % 5) gold[i] = rng() % 9;
    }
    const double c = cca(rankings, gold), r = mrr(rankings, gold);
    EXPECT_EQ(c, oracle::cca(rankings, gold));
    EXPECT_EQ(r, oracle::mrr(rankings, gold));
    EXPECT_GE(r, c);
  }
}

std::set<std::string> random_set(std::mt19937_64& rng) {
  std::set<std::string> s;
  const std::size_t n = rng() % 6;
  for (std::size_t i = 0; i < n; ++i) s.insert("e" + std::to_string(rng() % 8));
  return s;
}

TEST(Metrics, AnswerPrfMatchesNaiveSetScore) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const auto p = random_set(rng), g = random_set(rng);
    const Prf got = answer_prf(AnswerSet::entity_set(p), AnswerSet::entity_set(g));
    const oracle::Prf want = oracle::set_prf(p, g);
    EXPECT_EQ(got.precision, want.p);
    EXPECT_EQ(got.recall, want.r);
    EXPECT_EQ(got.f1, want.f);
  }
}

TEST(Metrics, AnswerPrfExamples) {
  const auto set = [](std::set<std::string> v) { return AnswerSet::entity_set(std::move(v)); };
  EXPECT_EQ(answer_prf(set({"a", "b"}), set({"b", "c"})), (Prf{0.5, 0.5, 0.5}));
  EXPECT_EQ(answer_prf(set({"a", "b"}), set({"a"})), (Prf{0.5, 1.0, 2.0 / 3}));
  EXPECT_EQ(answer_prf(set({}), set({})), (Prf{1, 1, 1}));
  EXPECT_EQ(answer_prf(set({}), set({"a"})), Prf{});
  EXPECT_EQ(answer_prf(set({"x"}), set({"a"})), Prf{});
  EXPECT_EQ(answer_prf(AnswerSet::count(3), AnswerSet::count(3)), (Prf{1, 1, 1}));
  EXPECT_EQ(answer_prf(AnswerSet::count(2), AnswerSet::count(3)), Prf{});
  EXPECT_EQ(answer_prf(AnswerSet::boolean(true), AnswerSet::boolean(true)), (Prf{1, 1, 1}));
  EXPECT_EQ(answer_prf(AnswerSet::boolean(false), AnswerSet::boolean(true)), Prf{});
  EXPECT_EQ(answer_prf(AnswerSet::count(1), set({"a"})), Prf{});
  const Prf scores[] = {{1, 1, 1}, {0, 0, 0}, {0.5, 1, 2.0 / 3}};
  const Prf avg = macro_average(scores);
  EXPECT_DOUBLE_EQ(avg.precision, 0.5);
  EXPECT_DOUBLE_EQ(avg.recall, 2.0 / 3);
  EXPECT_DOUBLE_EQ(avg.f1, (1 + 2.0 / 3) / 3);
}

class TempFile {
 public:
  explicit TempFile(const std::string& name)
      : path_(std::filesystem::temp_directory_path() / ("kgqa_test_" + name)) {}
  ~TempFile() { std::filesystem::remove(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

TEST(Checkpoint, RankingModelsRoundTripBitForBit) {
  Random rng(3);
  for (ModelKind kind : all_model_kinds()) {
    for (bool share : {false, true}) {
      const auto m = fixtures::small_model(kind, 11, share);
      TempFile f(std::string(to_string(kind)) + ".json");
      save_checkpoint(f.path(), m, {{"kg", "toy_kg.tsv"}});
      CheckpointMeta meta;
      const auto back = load_ranking_model(f.path(), &meta);
      EXPECT_EQ(meta.at("kg"), "toy_kg.tsv");
      EXPECT_EQ(back.kind(), kind);
      EXPECT_EQ(back.config().share_encoders, share);
      EXPECT_EQ(back.parameters().count(), m.parameters().count());
      EXPECT_EQ(back.parameters().aliases(), m.parameters().aliases());
      EXPECT_EQ(back.parameters().snapshot(), m.parameters().snapshot());
      const Tokens q = fixtures::random_question(rng, 4);
      std::vector<ChainInput> cs;
      for (int i = 0; i < 6; ++i) cs.push_back(fixtures::random_chain(rng, 1 + i % 2));
      EXPECT_EQ(back.scores(q, cs), m.scores(q, cs));
      EXPECT_EQ(checkpoint_json(back, meta), checkpoint_json(m, meta));
    }
  }
}

TEST(Checkpoint, ClassifiersRoundTrip) {
  auto c = make_intent_classifier({16, 8, 2}, fixtures::small_vocabulary());
  c.set_trained(true);
  const auto back = classifier_from_json(checkpoint_json(c));
  EXPECT_EQ(back.labels(), c.labels());
  EXPECT_TRUE(back.trained());
  const Tokens q{"who", "is", "the", "wife"};
  EXPECT_EQ(back.probabilities(q), c.probabilities(q));
}

TEST(Checkpoint, RejectsBadFiles) {
  EXPECT_THROW(load_ranking_model("/nonexistent/file.json"), DataError);
  EXPECT_THROW(ranking_from_json("{"), DataError);
  EXPECT_THROW(ranking_from_json(R"({"format": "other"})"), DataError);
  const auto m = fixtures::small_model(ModelKind::kBilstmDot, 1);
  auto j = checkpoint_json(m);
  EXPECT_THROW(classifier_from_json(j), DataError);
  const auto at = j.find("\"version\"");
  ASSERT_NE(at, std::string::npos);
  std::string bumped = j;
  bumped.replace(bumped.find('1', at), 1, "9");
  EXPECT_THROW(ranking_from_json(bumped), DataError);
}

TEST(Evaluate, ReportIsDeterministicAndConsistent) {
  const auto& kg = toy_kg();
  const std::vector<QAExample> sets[] = {questions()};
  ModelConfig c;
  c.embedding_dim = 8;
  c.hidden = 4;
  c.seed = 2;
  const RankingModel m(c, build_vocabulary(kg, SurfaceForms{}, sets), predicate_units(kg));
  const auto a = evaluate_pipeline(kg, SurfaceForms{}, m, nullptr, questions());
  const auto b = evaluate_pipeline(kg, SurfaceForms{}, m, nullptr, questions());
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(a.questions, 50u);
  EXPECT_EQ(a.per_question.size(), 50u);
  EXPECT_EQ(a.out_of_candidates, 0u);
  EXPECT_GE(a.mrr, a.cca);
  std::vector<std::optional<std::size_t>> ranks;
  std::vector<Prf> prfs;
  for (const auto& r : a.per_question) {
    ranks.push_back(r.gold_rank);
    prfs.push_back(r.prf);
  }
  EXPECT_EQ(a.cca, cca(ranks));
  EXPECT_EQ(a.f1, macro_average(prfs).f1);
  EXPECT_THROW(evaluate_pipeline(kg, SurfaceForms{}, m, nullptr, {}), ArgumentError);
}

}  // namespace
}  // namespace kgqa
