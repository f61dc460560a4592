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


// End-to-end question answering: candidate generation, ranking, auxiliary
// constraints, query assembly and execution.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgqa/auxiliary.hpp"
#include "kgqa/candidate_gen.hpp"
#include "kgqa/dataset.hpp"
#include "kgqa/encoders.hpp"
#include "kgqa/kg_store.hpp"
#include "kgqa/metrics.hpp"

namespace kgqa {

struct AuxiliaryModels {
  SequenceClassifier intent;
  SequenceClassifier placement;
  RankingModel class_ranker;
};

struct PipelineOptions {
  std::size_t top_k = 5;
  CandidateOptions candidates;
};

struct ScoredChain {
  CoreChain chain;
  double score = 0.0;
};

struct Answer {
  // False when no candidate chain exists.
  bool answerable = false;
  AnswerSet answers;
  std::optional<QueryGraph> graph;
  std::string query_text;

  std::vector<CoreChain> candidates;
  std::vector<std::size_t> ranking;  // candidate indices, best first
  std::vector<ScoredChain> top;      // the first top_k of the ranking

  Intent predicted_intent = Intent::kSet;
  Placement predicted_placement = Placement::kNone;
  // The predicted placement did not fit the chosen chain and was dropped.
  bool placement_demoted = false;
};

// Without auxiliary models the intent is set (ask for a fully grounded
// chain) and no class constraint is added.
Answer answer_question(const KnowledgeGraph& kg, const SurfaceForms& forms,
                       const RankingModel& ranker, const AuxiliaryModels* aux,
                       const Tokens& question, std::span<const NodeId> entities,
                       const PipelineOptions& options = {});

// The most probable intent that forms a valid query with `chain`; ties
// follow the order set, count, ask.
Intent choose_intent(std::span<const double> probabilities, const CoreChain& chain);

struct QuestionResult {
  std::string id;
  std::optional<std::size_t> gold_rank;
  bool gold_in_candidates = false;
  bool answerable = false;
  std::string query_text;
  Prf prf;
};

struct EvalReport {
  double cca = 0.0;
  double mrr = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t questions = 0;
  std::size_t out_of_candidates = 0;
  std::size_t unanswerable = 0;
  std::vector<QuestionResult> per_question;
};

// Throws ArgumentError on an empty dataset.
EvalReport evaluate_pipeline(const KnowledgeGraph& kg, const SurfaceForms& forms,
                             const RankingModel& ranker, const AuxiliaryModels* aux,
                             std::span<const QAExample> dataset, const PipelineOptions& options = {});

std::string to_json(const EvalReport& report);

// Surface-form tokens of every predicate and class of `kg` plus the tokens
// of every question in `datasets`.
Vocabulary build_vocabulary(const KnowledgeGraph& kg, const SurfaceForms& forms,
                            std::span<const std::vector<QAExample>> datasets);

}  // namespace kgqa
