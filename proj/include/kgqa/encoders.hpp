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

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgqa/diffmath.hpp"
#include "kgqa/kg_store.hpp"
#include "kgqa/layers.hpp"
#include "kgqa/text.hpp"
#include "kgqa/types.hpp"

namespace kgqa {

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";

// Token to embedding-row table. The reserved tokens <pad>, <unk>, "+", "-"
// and NO_HOP always occupy rows 0..4.
class Vocabulary {
 public:
  Vocabulary();

  // Returns the row of `token`, adding it when new.
  std::size_t add(std::string_view token);
  void add_all(const Tokens& tokens);

  // Row of `token`, or the <unk> row.
  std::size_t index(std::string_view token) const;
  bool contains(std::string_view token) const { return index_.count(std::string(token)) != 0; }
  std::size_t size() const { return tokens_.size(); }
  const std::string& token(std::size_t i) const { return tokens_[i]; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  static constexpr std::size_t reserved_count() { return 5; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class ModelKind : std::uint8_t {
  kBilstmDot,
  kBilstmDenseDot,
  kCnnDot,
  kSlotDot,
  kDamDot,
  kHrmDot,
};

std::string_view to_string(ModelKind kind);
// Accepts the names produced by to_string; throws ArgumentError otherwise.
ModelKind parse_model_kind(std::string_view text);
std::span<const ModelKind> all_model_kinds();

struct ModelConfig {
  ModelKind kind = ModelKind::kBilstmDot;
  std::size_t embedding_dim = 300;
  std::size_t hidden = 150;       // per direction
  std::size_t cnn_filters = 100;  // per width
  std::size_t dam_hidden = 300;
  bool share_encoders = false;
  std::uint64_t seed = 0;
};

// Named parameter tensors. An alias is a second name for an existing
// tensor; `unique()` lists every tensor once, in creation order.
class ParameterSet {
 public:
  ParameterSet() = default;
  ParameterSet(const ParameterSet&) = delete;
  ParameterSet& operator=(const ParameterSet&) = delete;
  ParameterSet(ParameterSet&&) = default;
  ParameterSet& operator=(ParameterSet&&) = default;

  diff::Tensor& create(const std::string& name, diff::Shape shape);
  void alias(const std::string& name, const std::string& target);

  bool contains(std::string_view name) const;
  diff::Tensor& get(std::string_view name);
  const diff::Tensor& get(std::string_view name) const;
  // Target of an alias, or nullopt for an owning name.
  std::optional<std::string> alias_target(std::string_view name) const;

  // Owning names in creation order.
  const std::vector<std::string>& names() const { return names_; }
  const std::map<std::string, std::string, std::less<>>& aliases() const { return aliases_; }
  std::vector<diff::Tensor*> unique();
  std::vector<const diff::Tensor*> unique() const;
  // Number of trainable scalars, counting aliased tensors once.
  std::size_t count() const;

  using Snapshot = std::vector<std::vector<double>>;
  Snapshot snapshot() const;
  void restore(const Snapshot& snapshot);

 private:
  std::vector<std::string> names_;
  std::vector<std::unique_ptr<diff::Tensor>> tensors_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, std::string, std::less<>> aliases_;
};

// Model-side view of a core chain, independent of the graph it came from.
struct ChainInput {
  Tokens linear;                // linearized chain
  std::array<Tokens, 2> hops;   // per-hop tokens; NO_HOP pads a one-hop chain
  std::vector<std::string> units;  // one "<sign><predicate IRI>" per hop
};

ChainInput make_chain_input(const CoreChain& chain, const KnowledgeGraph& kg,
                            const SurfaceForms& forms);
std::string predicate_unit(Direction direction, std::string_view predicate_iri);
// Both signed units for every predicate of `kg`, sorted.
std::vector<std::string> predicate_units(const KnowledgeGraph& kg);

struct SlotQuestion {
  std::array<diff::Var, 2> slots;
  diff::Var vector;  // [q1 ; q2]
  std::array<std::vector<double>, 2> attention;
};

struct DamEncoding {
  diff::Var question;
  diff::Var chain;
  // question_to_chain[i] is the distribution of question step i over chain
  // steps; chain_to_question[j] the reverse.
  std::vector<std::vector<double>> question_to_chain;
  std::vector<std::vector<double>> chain_to_question;
};

struct AttentionEntry {
  int slot = 1;
  std::string token;
  double weight = 0.0;
};

void write_attention_tsv(std::ostream& out, const std::vector<AttentionEntry>& table);
std::vector<AttentionEntry> read_attention_tsv(std::istream& in);

class Scorer;

class RankingModel {
 public:
  // `units` lists the predicate units of the HRM predicate-level table;
  // other kinds ignore it. Parameters are initialized from config.seed.
  RankingModel(ModelConfig config, Vocabulary vocabulary, std::vector<std::string> units = {});
  RankingModel(RankingModel&&) = default;
  RankingModel& operator=(RankingModel&&) = default;

  RankingModel clone() const;

  const ModelConfig& config() const { return config_; }
  ModelKind kind() const { return config_.kind; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<std::string>& units() const { return units_; }
  ParameterSet& parameters() { return params_; }
  const ParameterSet& parameters() const { return params_; }
  std::size_t output_dim() const;

  // Text format `token v1 ... vd`; rows of tokens outside the vocabulary are
  // skipped. Returns the number of rows replaced.
  std::size_t load_embeddings(const std::filesystem::path& path);
  std::size_t load_embeddings(std::istream& in, const std::string& source);

  double score(const Tokens& question, const ChainInput& chain) const;
  std::vector<double> scores(const Tokens& question, std::span<const ChainInput> chains) const;
  // Candidate indices by descending score; ties keep the lower index first.
  std::vector<std::size_t> rank(const Tokens& question, std::span<const ChainInput> chains) const;

  // Slot model only; throws ArgumentError for other kinds.
  std::vector<AttentionEntry> export_attention(const Tokens& question) const;

 private:
  friend class Scorer;

  void build();

  ModelConfig config_;
  Vocabulary vocabulary_;
  std::vector<std::string> units_;
  std::unordered_map<std::string, std::size_t> unit_index_;
  ParameterSet params_;

  const diff::Tensor* embedding_ = nullptr;
  const diff::Tensor* unit_embedding_ = nullptr;
  BiLstm question_lstm_, chain_lstm_, question2_lstm_, predicate_lstm_;
  ConvEncoder question_conv_, chain_conv_;
  Dense compare_ff_, dam_ff_;
  std::array<const diff::Tensor*, 2> slot_keys_{};
};

// Scores question/chain pairs on one tape, memoizing embeddings and
// encodings that repeat across a question's candidates.
class Scorer {
 public:
  Scorer(const RankingModel& model, diff::Tape& tape);

  diff::Var embed(std::string_view token);
  std::vector<diff::Var> embed(const Tokens& tokens);

  // Final question-encoder state; ArgumentError on empty input.
  diff::Var encode_lstm(const Tokens& tokens);
  // Final chain-encoder state.
  diff::Var encode_chain_lstm(const Tokens& tokens);
  diff::Var encode_cnn(const Tokens& tokens, bool question_side);
  SlotQuestion encode_slot_question(const Tokens& tokens);
  std::array<diff::Var, 2> encode_slot_chain(const ChainInput& chain);
  DamEncoding encode_dam(const Tokens& question, const Tokens& chain);
  std::pair<diff::Var, diff::Var> encode_hrm(const Tokens& question, const ChainInput& chain);

  diff::Var compare(diff::Var question, diff::Var chain);
  diff::Var sim(const Tokens& question, const ChainInput& chain);

 private:
  const BiLstmOutput& lstm_states(const BiLstm& layer, const Tokens& tokens, int cache_slot);

  const RankingModel& model_;
  diff::Tape& tape_;
  std::unordered_map<std::size_t, diff::Var> embeddings_;
  std::map<std::pair<int, std::string>, BiLstmOutput> lstm_cache_;
  std::map<std::pair<int, std::string>, diff::Var> vector_cache_;
  std::map<std::string, SlotQuestion> slot_cache_;
};

}  // namespace kgqa
