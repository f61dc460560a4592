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


#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/candidate_gen.hpp"
#include "kgqa/dataset.hpp"
#include "kgqa/diffmath.hpp"
#include "kgqa/encoders.hpp"
#include "kgqa/random.hpp"

namespace kgqa {

enum class Setting : std::uint8_t { kPointwise, kPairwise };

std::string_view to_string(Setting setting);
Setting parse_setting(std::string_view text);

struct TrainConfig {
  Setting setting = Setting::kPairwise;
  double lr = 1e-3;
  double fine_tune_lr = 1e-4;
  double margin = 1.0;
  std::size_t negatives = 100;
  std::size_t max_epochs = 300;
  std::size_t patience = 20;
  double clip_norm = 0.5;
  std::uint64_t seed = 0;
  bool resample_each_epoch = true;
};

// Throws ConfigurationError when a field is out of range.
void validate(const TrainConfig& config);

// A question with its candidate chains; `gold` is absent when the gold
// chain was not generated.
struct RankingExample {
  std::string id;
  Tokens question;
  std::vector<CoreChain> chains;
  std::vector<ChainInput> candidates;
  std::optional<std::size_t> gold;
};

RankingExample make_ranking_example(const QAExample& example, const KnowledgeGraph& kg,
                                    const SurfaceForms& forms,
                                    const CandidateOptions& options = {});
std::vector<RankingExample> make_ranking_examples(std::span<const QAExample> examples,
                                                  const KnowledgeGraph& kg,
                                                  const SurfaceForms& forms,
                                                  const CandidateOptions& options = {});

// Binary log loss on logistic(s).
double pointwise_loss(double score, double target);
diff::Var pointwise_loss(diff::Var score, double target);
// max(0, margin - positive + negative) on raw scores.
double pairwise_loss(double positive, double negative, double margin);
diff::Var pairwise_loss(diff::Var positive, diff::Var negative, double margin);

// Up to `n` distinct indices in [0, candidate_count) other than `gold`,
// drawn uniformly without replacement; all of them when fewer exist.
std::vector<std::size_t> sample_negatives(std::size_t candidate_count, std::size_t gold,
                                          std::size_t n, Random& rng);

struct TrainReport {
  // Validation CCA before the first update.
  double initial_validation_cca = 0.0;
  // Entry e describes epoch e + 1.
  std::vector<double> train_loss;
  std::vector<double> validation_cca;
  // 0 when no epoch improved on the initial parameters.
  std::size_t best_epoch = 0;
  double best_validation_cca = 0.0;
  // Training examples without their gold chain among the candidates.
  std::size_t skipped = 0;
};

// Core-chain accuracy of `model` on `examples`.
double ranking_cca(const RankingModel& model, std::span<const RankingExample> examples);

// Trains with Adam, clipping and early stopping on validation CCA, then
// restores the best parameters. An empty validation set falls back to the
// training set. Throws DataError when no training example is usable.
TrainReport train(RankingModel& model, std::span<const RankingExample> train_set,
                  std::span<const RankingExample> validation_set, const TrainConfig& config);

// The same loop at config.fine_tune_lr.
TrainReport fine_tune(RankingModel& model, std::span<const RankingExample> train_set,
                      std::span<const RankingExample> validation_set, const TrainConfig& config);

// Concatenation of two datasets for a single combined training run.
std::vector<RankingExample> coalesce(std::span<const RankingExample> first,
                                     std::span<const RankingExample> second);

struct DatasetSplit {
  std::vector<std::size_t> train, validation, test;
};

// Seeded shuffle, then 70% / 10% / 20% (floors for the first two parts).
DatasetSplit split_dataset(std::size_t size, std::uint64_t seed);

}  // namespace kgqa
