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


// Classifiers for question intent and class-constraint placement, and the
// ranker that chooses the constraining class.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kgqa/dataset.hpp"
#include "kgqa/diffmath.hpp"
#include "kgqa/encoders.hpp"
#include "kgqa/kg_store.hpp"
#include "kgqa/layers.hpp"
#include "kgqa/training.hpp"

namespace kgqa {

struct ClassifierConfig {
  std::size_t embedding_dim = 300;
  std::size_t hidden = 150;
  std::uint64_t seed = 0;
};

// Embedding, BiLSTM, affine map of the final state, softmax.
class SequenceClassifier {
 public:
  SequenceClassifier(ClassifierConfig config, Vocabulary vocabulary,
                     std::vector<std::string> labels);
  SequenceClassifier(SequenceClassifier&&) = default;
  SequenceClassifier& operator=(SequenceClassifier&&) = default;

  const ClassifierConfig& config() const { return config_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<std::string>& labels() const { return labels_; }
  ParameterSet& parameters() { return params_; }
  const ParameterSet& parameters() const { return params_; }

  bool trained() const { return trained_; }
  void set_trained(bool trained) { trained_ = trained; }

  diff::Var logits(diff::Tape& tape, const Tokens& tokens) const;
  // Throws ConfigurationError before training.
  std::vector<double> probabilities(const Tokens& tokens) const;
  // Most probable label; ties go to the earlier label.
  std::size_t predict(const Tokens& tokens) const;

 private:
  ClassifierConfig config_;
  Vocabulary vocabulary_;
  std::vector<std::string> labels_;
  ParameterSet params_;
  BiLstm encoder_;
  const diff::Tensor* embedding_ = nullptr;
  const diff::Tensor* out_w_ = nullptr;
  const diff::Tensor* out_b_ = nullptr;
  bool trained_ = false;
};

SequenceClassifier make_intent_classifier(ClassifierConfig config, Vocabulary vocabulary);
SequenceClassifier make_placement_classifier(ClassifierConfig config, Vocabulary vocabulary);

Intent predict_intent(const SequenceClassifier& model, const Tokens& question);
Placement predict_type_placement(const SequenceClassifier& model, const Tokens& question);

struct ClassifierTrainConfig {
  double lr = 1e-3;
  std::size_t max_epochs = 300;
  std::size_t patience = 20;
  double clip_norm = 0.5;
  std::uint64_t seed = 0;
  // Weight each example by N / (K * count(label)).
  bool class_weights = false;
};

struct ClassifierReport {
  std::vector<double> train_loss;
  std::vector<double> validation_accuracy;
  std::size_t best_epoch = 0;
  double best_validation_accuracy = 0.0;
};

using LabeledTokens = std::pair<Tokens, std::size_t>;

double classifier_accuracy(const SequenceClassifier& model, std::span<const LabeledTokens> data);

// Cross-entropy training with Adam and early stopping on validation
// accuracy (training accuracy when `validation` is empty). Marks the model
// trained.
ClassifierReport train_classifier(SequenceClassifier& model, std::span<const LabeledTokens> train,
                                  std::span<const LabeledTokens> validation,
                                  const ClassifierTrainConfig& config);

std::vector<LabeledTokens> intent_examples(std::span<const QAExample> examples);
std::vector<LabeledTokens> placement_examples(std::span<const QAExample> examples);

// Nodes bound to the lambda or existential variable when `chain` executes.
std::vector<NodeId> variable_bindings(const KnowledgeGraph& kg, const CoreChain& chain,
                                      Placement placement);

// Classes of the nodes bound to the designated variable, sorted; all classes
// of the graph when that is empty. Throws ArgumentError for kNone.
std::vector<NodeId> candidate_classes(const KnowledgeGraph& kg, const CoreChain& chain,
                                      Placement placement);

ChainInput class_input(const KnowledgeGraph& kg, const SurfaceForms& forms, NodeId cls);

// Highest-scoring class; ties go to the lower class id. Throws
// ArgumentError on an empty candidate list.
NodeId rank_classes(const RankingModel& model, const Tokens& question, const KnowledgeGraph& kg,
                    const SurfaceForms& forms, std::span<const NodeId> candidates);

// One ranking example per question with a class constraint whose class is
// in the graph; every class of the graph is a candidate.
std::vector<RankingExample> class_examples(std::span<const QAExample> examples,
                                           const KnowledgeGraph& kg, const SurfaceForms& forms);

}  // namespace kgqa
