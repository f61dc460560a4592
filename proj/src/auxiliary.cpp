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


#include "kgqa/auxiliary.hpp"

#include <algorithm>
#include <map>

#include "kgqa/errors.hpp"
#include "kgqa/query_graph.hpp"

namespace kgqa {

using diff::Tape;
using diff::Var;

SequenceClassifier::SequenceClassifier(ClassifierConfig config, Vocabulary vocabulary,
                                       std::vector<std::string> labels)
    : config_(config), vocabulary_(std::move(vocabulary)), labels_(std::move(labels)) {
  if (labels_.size() < 2) throw ConfigurationError("a classifier needs at least two labels");
  if (config_.embedding_dim == 0 || config_.hidden == 0) {
    throw ConfigurationError("embedding and hidden sizes must be positive");
  }
  const std::size_t d = config_.embedding_dim, h = config_.hidden;
  params_.create("embedding", {vocabulary_.size(), d});
  for (const char* dir : {"encoder.fw", "encoder.bw"}) {
    params_.create(std::string(dir) + ".w", {4 * h, d + h});
    params_.create(std::string(dir) + ".b", {4 * h});
  }
  params_.create("output.w", {labels_.size(), 2 * h});
  params_.create("output.b", {labels_.size()});

  Random rng(config_.seed);
  for (const auto& name : params_.names()) {
    if (!name.ends_with(".b")) diff::glorot_uniform(params_.get(name), rng);
  }
  embedding_ = &params_.get("embedding");
  encoder_ = BiLstm{{&params_.get("encoder.fw.w"), &params_.get("encoder.fw.b")},
                    {&params_.get("encoder.bw.w"), &params_.get("encoder.bw.b")}};
  out_w_ = &params_.get("output.w");
  out_b_ = &params_.get("output.b");
}

Var SequenceClassifier::logits(Tape& tape, const Tokens& tokens) const {
  if (tokens.empty()) throw ArgumentError("cannot classify an empty question");
  std::vector<Var> inputs;
  inputs.reserve(tokens.size());
  for (const auto& t : tokens) inputs.push_back(diff::row(tape, *embedding_, vocabulary_.index(t)));
  return diff::affine(*out_w_, *out_b_, run_bilstm(encoder_, inputs).final);
}

std::vector<double> SequenceClassifier::probabilities(const Tokens& tokens) const {
  if (!trained_) throw ConfigurationError("classifier has not been trained");
  Tape tape(false);
  const Var p = diff::softmax(logits(tape, tokens));
  return {p.value().begin(), p.value().end()};
}

std::size_t SequenceClassifier::predict(const Tokens& tokens) const {
  const std::vector<double> p = probabilities(tokens);
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

SequenceClassifier make_intent_classifier(ClassifierConfig config, Vocabulary vocabulary) {
  return SequenceClassifier(config, std::move(vocabulary), {"set", "count", "ask"});
}

SequenceClassifier make_placement_classifier(ClassifierConfig config, Vocabulary vocabulary) {
  return SequenceClassifier(config, std::move(vocabulary), {"none", "lambda", "existential"});
}

Intent predict_intent(const SequenceClassifier& model, const Tokens& question) {
  return parse_intent(model.labels()[model.predict(question)]);
}

Placement predict_type_placement(const SequenceClassifier& model, const Tokens& question) {
  return parse_placement(model.labels()[model.predict(question)]);
}

double classifier_accuracy(const SequenceClassifier& model, std::span<const LabeledTokens> data) {
  if (data.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& [tokens, label] : data) hits += model.predict(tokens) == label ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

ClassifierReport train_classifier(SequenceClassifier& model, std::span<const LabeledTokens> train,
                                  std::span<const LabeledTokens> validation,
                                  const ClassifierTrainConfig& config) {
  if (train.empty()) throw DataError("no training examples for the classifier");
  if (!(config.lr >= 0.0) || !(config.clip_norm > 0.0)) {
    throw ConfigurationError("classifier lr must be non-negative and clip_norm positive");
  }
  const std::size_t k = model.labels().size();
  for (const auto& [tokens, label] : train) {
    if (label >= k) throw DataError("classifier label out of range");
  }
  std::vector<double> weight(k, 1.0);
  if (config.class_weights) {
    std::vector<std::size_t> counts(k, 0);
    for (const auto& ex : train) ++counts[ex.second];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        weight[c] = static_cast<double>(train.size()) / static_cast<double>(k * counts[c]);
      }
    }
  }
  const auto held_out = validation.empty() ? train : validation;

  model.set_trained(true);
  Random rng(config.seed);
  diff::AdamState adam;
  std::vector<diff::Tensor*> params = model.parameters().unique();
  ClassifierReport report;
  report.best_validation_accuracy = classifier_accuracy(model, held_out);
  auto best = model.parameters().snapshot();
  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    double total = 0.0;
    for (std::size_t i : order) {
      const auto& [tokens, label] = train[i];
      Tape tape;
      const Var loss =
          diff::scale(diff::cross_entropy(model.logits(tape, tokens), label), weight[label]);
      total += loss.scalar();
      diff::Gradients grads = tape.backward(loss);
      diff::clip_gradients(grads, config.clip_norm);
      diff::adam_step(params, grads, adam, config.lr);
    }
    report.train_loss.push_back(total / static_cast<double>(train.size()));
    const double acc = classifier_accuracy(model, held_out);
    report.validation_accuracy.push_back(acc);
    if (acc > report.best_validation_accuracy) {
      report.best_validation_accuracy = acc;
      report.best_epoch = epoch;
      best = model.parameters().snapshot();
      since_best = 0;
      if (acc == 1.0) break;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  model.parameters().restore(best);
  return report;
}

std::vector<LabeledTokens> intent_examples(std::span<const QAExample> examples) {
  std::vector<LabeledTokens> out;
  for (const auto& ex : examples) out.emplace_back(ex.tokens, static_cast<std::size_t>(ex.intent));
  return out;
}

std::vector<LabeledTokens> placement_examples(std::span<const QAExample> examples) {
  std::vector<LabeledTokens> out;
  for (const auto& ex : examples) {
    out.emplace_back(ex.tokens, static_cast<std::size_t>(ex.placement));
  }
  return out;
}

std::vector<NodeId> variable_bindings(const KnowledgeGraph& kg, const CoreChain& chain,
                                      Placement placement) {
  switch (placement) {
    case Placement::kNone:
      return {};
    case Placement::kLambda: {
      if (!has_lambda(chain)) return {};
      QueryGraph g{chain, Intent::kSet, std::nullopt};
      return bindings(kg, g);
    }
    case Placement::kExistential: {
      if (!has_existential(chain)) return {};
      std::vector<NodeId> out;
      for (NodeId mid : kg.step(chain.root, chain.hops[0])) {
        if (!kg.step(mid, chain.hops[1]).empty()) out.push_back(mid);
      }
      return out;
    }
  }
  return {};
}

std::vector<NodeId> candidate_classes(const KnowledgeGraph& kg, const CoreChain& chain,
                                      Placement placement) {
  if (placement == Placement::kNone) {
    throw ArgumentError("candidate classes need a lambda or existential placement");
  }
  std::vector<NodeId> out;
  for (NodeId n : variable_bindings(kg, chain, placement)) {
    const auto cls = kg.classes_of(n);
    out.insert(out.end(), cls.begin(), cls.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) out.assign(kg.classes().begin(), kg.classes().end());
  return out;
}

ChainInput class_input(const KnowledgeGraph& kg, const SurfaceForms& forms, NodeId cls) {
  ChainInput in;
  in.linear = forms.lookup(kg.node_name(cls));
  in.hops[0] = in.linear;
  in.hops[1] = {std::string(kNoHopToken)};
  in.units = {kg.node_name(cls)};
  return in;
}

NodeId rank_classes(const RankingModel& model, const Tokens& question, const KnowledgeGraph& kg,
                    const SurfaceForms& forms, std::span<const NodeId> candidates) {
  if (candidates.empty()) throw ArgumentError("rank_classes needs at least one candidate");
  std::vector<NodeId> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ChainInput> inputs;
  for (NodeId c : sorted) inputs.push_back(class_input(kg, forms, c));
  return sorted[model.rank(question, inputs).front()];
}

std::vector<RankingExample> class_examples(std::span<const QAExample> examples,
                                           const KnowledgeGraph& kg, const SurfaceForms& forms) {
  const auto classes = kg.classes();
  std::vector<ChainInput> inputs;
  for (NodeId c : classes) inputs.push_back(class_input(kg, forms, c));
  std::vector<RankingExample> out;
  for (const auto& ex : examples) {
    if (ex.placement == Placement::kNone || !ex.type_class) continue;
    const auto id = kg.find_node(*ex.type_class);
    if (!id) continue;
    auto it = std::find(classes.begin(), classes.end(), *id);
    if (it == classes.end()) continue;
    RankingExample r;
    r.id = ex.id;
    r.question = ex.tokens;
    r.candidates = inputs;
    r.gold = static_cast<std::size_t>(it - classes.begin());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace kgqa
