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


#include "kgqa/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kgqa/errors.hpp"
#include "kgqa/metrics.hpp"

namespace kgqa {

using diff::Tape;
using diff::Var;

std::string_view to_string(Setting setting) {
  return setting == Setting::kPointwise ? "pointwise" : "pairwise";
}

Setting parse_setting(std::string_view text) {
  if (text == "pointwise") return Setting::kPointwise;
  if (text == "pairwise") return Setting::kPairwise;
  throw ArgumentError("unknown training setting '" + std::string(text) + "'");
}

void validate(const TrainConfig& c) {
  if (!(c.lr > 0.0)) throw ConfigurationError("lr must be positive");
  if (!(c.fine_tune_lr >= 0.0)) throw ConfigurationError("fine_tune_lr must be non-negative");
  if (!(c.margin > 0.0)) throw ConfigurationError("margin must be positive");
  if (c.negatives < 1) throw ConfigurationError("negatives must be at least 1");
  if (!(c.clip_norm > 0.0)) throw ConfigurationError("clip_norm must be positive");
}

RankingExample make_ranking_example(const QAExample& example, const KnowledgeGraph& kg,
                                    const SurfaceForms& forms, const CandidateOptions& options) {
  RankingExample out;
  out.id = example.id;
  out.question = example.tokens;
  const auto entities = resolve_entities(example, kg);
  if (!entities) return out;
  out.chains = generate_candidates(kg, *entities, options);
  out.candidates.reserve(out.chains.size());
  for (const auto& c : out.chains) out.candidates.push_back(make_chain_input(c, kg, forms));
  if (const auto gold = resolve_gold_chain(example, kg)) {
    auto it = std::find(out.chains.begin(), out.chains.end(), *gold);
    if (it != out.chains.end()) out.gold = static_cast<std::size_t>(it - out.chains.begin());
  }
  return out;
}

std::vector<RankingExample> make_ranking_examples(std::span<const QAExample> examples,
                                                  const KnowledgeGraph& kg,
                                                  const SurfaceForms& forms,
                                                  const CandidateOptions& options) {
  std::vector<RankingExample> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) out.push_back(make_ranking_example(ex, kg, forms, options));
  return out;
}

double pointwise_loss(double score, double target) {
  Tape tape(false);
  return pointwise_loss(tape.constant({score}), target).scalar();
}

Var pointwise_loss(Var score, double target) { return diff::binary_cross_entropy(score, target); }

double pairwise_loss(double positive, double negative, double margin) {
  return std::max(0.0, margin - positive + negative);
}

Var pairwise_loss(Var positive, Var negative, double margin) {
  return diff::relu(diff::shift(diff::sub(negative, positive), margin));
}

std::vector<std::size_t> sample_negatives(std::size_t candidate_count, std::size_t gold,
                                          std::size_t n, Random& rng) {
  if (gold >= candidate_count) throw ArgumentError("gold index out of range");
  std::vector<std::size_t> pool;
  pool.reserve(candidate_count - 1);
  for (std::size_t i = 0; i < candidate_count; ++i) {
    if (i != gold) pool.push_back(i);
  }
  if (pool.size() <= n) return pool;
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(pool[i], pool[i + rng.index(pool.size() - i)]);
  }
  pool.resize(n);
  return pool;
}

double ranking_cca(const RankingModel& model, std::span<const RankingExample> examples) {
  if (examples.empty()) return 0.0;
  std::vector<std::optional<std::size_t>> ranks;
  ranks.reserve(examples.size());
  for (const auto& ex : examples) {
    if (!ex.gold || ex.candidates.empty()) {
      ranks.push_back(std::nullopt);
      continue;
    }
    ranks.push_back(gold_rank(model.rank(ex.question, ex.candidates), ex.gold));
  }
  return cca(ranks);
}

namespace {

// Loss of one question: the gold chain against its sampled negatives.
Var example_loss(const RankingModel& model, Tape& tape, const RankingExample& ex,
                 std::span<const std::size_t> negatives, const TrainConfig& config) {
  Scorer scorer(model, tape);
  const Var positive = scorer.sim(ex.question, ex.candidates[*ex.gold]);
  std::vector<Var> terms;
  terms.reserve(negatives.size() + 1);
  if (config.setting == Setting::kPointwise) {
    terms.push_back(pointwise_loss(positive, 1.0));
    for (std::size_t n : negatives) {
      terms.push_back(pointwise_loss(scorer.sim(ex.question, ex.candidates[n]), 0.0));
    }
  } else {
    for (std::size_t n : negatives) {
      terms.push_back(
          pairwise_loss(positive, scorer.sim(ex.question, ex.candidates[n]), config.margin));
    }
  }
  return diff::mean(terms);
}

TrainReport run(RankingModel& model, std::span<const RankingExample> train_set,
                std::span<const RankingExample> validation_set, const TrainConfig& config,
                double lr) {
  validate(config);
  if (!(lr >= 0.0)) throw ConfigurationError("learning rate must be non-negative");

  std::vector<std::size_t> usable;
  TrainReport report;
  for (std::size_t i = 0; i < train_set.size(); ++i) {
    const auto& ex = train_set[i];
    const bool trainable = ex.gold && (config.setting == Setting::kPointwise || ex.candidates.size() > 1);
    if (ex.gold) {
      if (trainable) usable.push_back(i);
    } else {
      ++report.skipped;
    }
  }
  if (usable.empty()) throw DataError("no usable training examples");
  const auto validation = validation_set.empty() ? train_set : validation_set;

  Random rng(config.seed);
  diff::AdamState adam;
  std::vector<diff::Tensor*> params = model.parameters().unique();
  std::vector<std::vector<std::size_t>> negatives(train_set.size());

  report.initial_validation_cca = ranking_cca(model, validation);
  report.best_validation_cca = report.initial_validation_cca;
  auto best = model.parameters().snapshot();

  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::vector<std::size_t> order = usable;
    rng.shuffle(order);
    double total = 0.0;
    for (std::size_t i : order) {
      const RankingExample& ex = train_set[i];
      if (epoch == 1 || config.resample_each_epoch) {
        negatives[i] = sample_negatives(ex.candidates.size(), *ex.gold, config.negatives, rng);
      }
      Tape tape;
      const Var loss = example_loss(model, tape, ex, negatives[i], config);
      total += loss.scalar();
      diff::Gradients grads = tape.backward(loss);
      diff::clip_gradients(grads, config.clip_norm);
      diff::adam_step(params, grads, adam, lr);
    }
    report.train_loss.push_back(total / static_cast<double>(order.size()));
    const double score = ranking_cca(model, validation);
    report.validation_cca.push_back(score);
    if (score > report.best_validation_cca) {
      report.best_validation_cca = score;
      report.best_epoch = epoch;
      best = model.parameters().snapshot();
      since_best = 0;
      // Nothing can beat a perfect score, so later epochs would be discarded.
      if (score == 1.0) break;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  model.parameters().restore(best);
  return report;
}

}  // namespace

TrainReport train(RankingModel& model, std::span<const RankingExample> train_set,
                  std::span<const RankingExample> validation_set, const TrainConfig& config) {
  return run(model, train_set, validation_set, config, config.lr);
}

TrainReport fine_tune(RankingModel& model, std::span<const RankingExample> train_set,
                      std::span<const RankingExample> validation_set, const TrainConfig& config) {
  return run(model, train_set, validation_set, config, config.fine_tune_lr);
}

std::vector<RankingExample> coalesce(std::span<const RankingExample> first,
                                     std::span<const RankingExample> second) {
  std::vector<RankingExample> out(first.begin(), first.end());
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

DatasetSplit split_dataset(std::size_t size, std::uint64_t seed) {
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  Random rng(seed);
  rng.shuffle(order);
  const std::size_t n_train = size * 7 / 10;
  const std::size_t n_val = size / 10;
  DatasetSplit s;
  s.train.assign(order.begin(), order.begin() + n_train);
  s.validation.assign(order.begin() + n_train, order.begin() + n_train + n_val);
  s.test.assign(order.begin() + n_train + n_val, order.end());
  return s;
}

}  // namespace kgqa
