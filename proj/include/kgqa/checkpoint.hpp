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


// Versioned JSON checkpoints. Parameter values are written with enough
// digits to read back the identical doubles.

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "kgqa/auxiliary.hpp"
#include "kgqa/encoders.hpp"

namespace kgqa {

inline constexpr int kCheckpointVersion = 1;

// Free-form string attributes stored beside the model, e.g. the graph the
// model was trained on.
using CheckpointMeta = std::map<std::string, std::string>;

std::string checkpoint_json(const RankingModel& model, const CheckpointMeta& meta = {});
std::string checkpoint_json(const SequenceClassifier& model, const CheckpointMeta& meta = {});

RankingModel ranking_from_json(const std::string& text, CheckpointMeta* meta = nullptr);
SequenceClassifier classifier_from_json(const std::string& text, CheckpointMeta* meta = nullptr);

void save_checkpoint(const std::filesystem::path& path, const RankingModel& model,
                     const CheckpointMeta& meta = {});
void save_checkpoint(const std::filesystem::path& path, const SequenceClassifier& model,
                     const CheckpointMeta& meta = {});

// Throw DataError for unreadable, malformed or mismatched files.
RankingModel load_ranking_model(const std::filesystem::path& path, CheckpointMeta* meta = nullptr);
SequenceClassifier load_classifier(const std::filesystem::path& path,
                                   CheckpointMeta* meta = nullptr);

}  // namespace kgqa
