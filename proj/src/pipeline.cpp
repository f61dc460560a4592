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


#include "kgqa/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "kgqa/errors.hpp"
#include "kgqa/query_graph.hpp"

namespace kgqa {

namespace {

bool valid_intent(Intent intent, const CoreChain& chain) {
  return !validate(QueryGraph{chain, intent, std::nullopt}).has_value();
}

}  // namespace

Intent choose_intent(std::span<const double> probabilities, const CoreChain& chain) {
  std::vector<std::size_t> order(probabilities.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return probabilities[a] > probabilities[b];
  });
  for (std::size_t i : order) {
    const auto intent = static_cast<Intent>(i);
    if (valid_intent(intent, chain)) return intent;
  }
  return chain.second_entity && !has_lambda(chain) ? Intent::kAsk : Intent::kSet;
}

Answer answer_question(const KnowledgeGraph& kg, const SurfaceForms& forms,
                       const RankingModel& ranker, const AuxiliaryModels* aux,
                       const Tokens& question, std::span<const NodeId> entities,
                       const PipelineOptions& options) {
  Answer out;
  out.candidates = generate_candidates(kg, entities, options.candidates);
  if (out.candidates.empty() || question.empty()) return out;

  std::vector<ChainInput> inputs;
  inputs.reserve(out.candidates.size());
  for (const auto& c : out.candidates) inputs.push_back(make_chain_input(c, kg, forms));
  const std::vector<double> scores = ranker.scores(question, inputs);
  out.ranking.resize(scores.size());
  std::iota(out.ranking.begin(), out.ranking.end(), 0);
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  for (std::size_t i = 0; i < std::min(options.top_k, out.ranking.size()); ++i) {
    out.top.push_back({out.candidates[out.ranking[i]], scores[out.ranking[i]]});
  }

  QueryGraph graph;
  graph.chain = out.candidates[out.ranking.front()];
  if (aux) {
    graph.intent = choose_intent(aux->intent.probabilities(question), graph.chain);
    out.predicted_placement = predict_type_placement(aux->placement, question);
  } else {
    graph.intent = valid_intent(Intent::kSet, graph.chain) ? Intent::kSet : Intent::kAsk;
  }
  out.predicted_intent = graph.intent;

  if (out.predicted_placement != Placement::kNone && aux) {
    QueryGraph probe = graph;
    probe.class_constraint = ClassConstraint{out.predicted_placement, 0};
    if (kg.classes().empty() || validate(probe)) {
      out.placement_demoted = true;
    } else {
      const auto classes = candidate_classes(kg, graph.chain, out.predicted_placement);
      probe.class_constraint->cls = rank_classes(aux->class_ranker, question, kg, forms, classes);
      graph = probe;
    }
  }

  out.answerable = true;
  out.answers = execute(kg, graph);
  out.query_text = to_query_text(graph, kg);
  out.graph = std::move(graph);
  return out;
}

EvalReport evaluate_pipeline(const KnowledgeGraph& kg, const SurfaceForms& forms,
                             const RankingModel& ranker, const AuxiliaryModels* aux,
                             std::span<const QAExample> dataset, const PipelineOptions& options) {
  if (dataset.empty()) throw ArgumentError("cannot evaluate an empty dataset");
  EvalReport report;
  std::vector<std::optional<std::size_t>> ranks;
  std::vector<Prf> scores;
  for (const QAExample& ex : dataset) {
    QuestionResult r;
    r.id = ex.id;
    Answer answer;
    if (const auto entities = resolve_entities(ex, kg)) {
      answer = answer_question(kg, forms, ranker, aux, ex.tokens, *entities, options);
    }
    if (const auto gold = resolve_gold_chain(ex, kg)) {
      auto it = std::find(answer.candidates.begin(), answer.candidates.end(), *gold);
      if (it != answer.candidates.end()) {
        r.gold_in_candidates = true;
        r.gold_rank = gold_rank(answer.ranking,
                                static_cast<std::size_t>(it - answer.candidates.begin()));
      }
    }
    r.answerable = answer.answerable;
    r.query_text = answer.query_text;
    r.prf = answer.answerable ? answer_prf(answer.answers, ex.gold_answers) : Prf{};
    report.out_of_candidates += r.gold_in_candidates ? 0 : 1;
    report.unanswerable += r.answerable ? 0 : 1;
    ranks.push_back(r.gold_rank);
    scores.push_back(r.prf);
    report.per_question.push_back(std::move(r));
  }
  report.questions = dataset.size();
  report.cca = cca(ranks);
  report.mrr = mrr(ranks);
  const Prf macro = macro_average(scores);
  report.precision = macro.precision;
  report.recall = macro.recall;
  report.f1 = macro.f1;
  return report;
}

std::string to_json(const EvalReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["questions"] = report.questions;
  j["cca"] = report.cca;
  j["mrr"] = report.mrr;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  j["out_of_candidates"] = report.out_of_candidates;
  j["unanswerable"] = report.unanswerable;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.per_question) {
    ordered_json row;
    row["id"] = r.id;
    row["gold_rank"] = r.gold_rank ? ordered_json(*r.gold_rank) : ordered_json(nullptr);
    row["answerable"] = r.answerable;
    row["query"] = r.query_text;
    row["precision"] = r.prf.precision;
    row["recall"] = r.prf.recall;
    row["f1"] = r.prf.f1;
    rows.push_back(row);
  }
  j["per_question"] = rows;
  return j.dump(2) + "\n";
}

Vocabulary build_vocabulary(const KnowledgeGraph& kg, const SurfaceForms& forms,
                            std::span<const std::vector<QAExample>> datasets) {
  Vocabulary v;
  for (PredicateId p = 0; p < kg.predicate_count(); ++p) {
    if (kg.type_predicate() != p) v.add_all(forms.lookup(kg.predicate_name(p)));
  }
  for (NodeId c : kg.classes()) v.add_all(forms.lookup(kg.node_name(c)));
  for (const auto& dataset : datasets) {
    for (const auto& ex : dataset) v.add_all(ex.tokens);
  }
  return v;
}

}  // namespace kgqa
