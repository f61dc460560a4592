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


#include "kgqa/encoders.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "kgqa/errors.hpp"
#include "kgqa/query_graph.hpp"

namespace kgqa {

using diff::Tape;
using diff::Tensor;
using diff::Var;

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary() {
  for (std::string_view t : {kPadToken, kUnkToken, kForwardSign, kReverseSign, kNoHopToken}) {
    add(t);
  }
}

std::size_t Vocabulary::add(std::string_view token) {
  auto [it, inserted] = index_.try_emplace(std::string(token), tokens_.size());
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

void Vocabulary::add_all(const Tokens& tokens) {
  for (const auto& t : tokens) add(t);
}

std::size_t Vocabulary::index(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? 1 : it->second;
}

// ---------------------------------------------------------------------------
// Model kinds

namespace {

constexpr ModelKind kKinds[] = {ModelKind::kBilstmDot, ModelKind::kBilstmDenseDot,
                                ModelKind::kCnnDot,    ModelKind::kSlotDot,
                                ModelKind::kDamDot,    ModelKind::kHrmDot};

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kBilstmDot:
      return "bilstm-dot";
    case ModelKind::kBilstmDenseDot:
      return "bilstm-dense-dot";
    case ModelKind::kCnnDot:
      return "cnn-dot";
    case ModelKind::kSlotDot:
      return "slot-dot";
    case ModelKind::kDamDot:
      return "dam-dot";
    case ModelKind::kHrmDot:
      return "hrm-dot";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  for (ModelKind k : kKinds) {
    if (to_string(k) == text) return k;
  }
  throw ArgumentError("unknown model kind '" + std::string(text) + "'");
}

std::span<const ModelKind> all_model_kinds() { return kKinds; }

// ---------------------------------------------------------------------------
// ParameterSet

Tensor& ParameterSet::create(const std::string& name, diff::Shape shape) {
  if (contains(name)) throw ArgumentError("duplicate parameter '" + name + "'");
  index_[name] = tensors_.size();
  names_.push_back(name);
  tensors_.push_back(std::make_unique<Tensor>(std::move(shape)));
  return *tensors_.back();
}

void ParameterSet::alias(const std::string& name, const std::string& target) {
  if (contains(name)) throw ArgumentError("duplicate parameter '" + name + "'");
  auto it = index_.find(target);
  if (it == index_.end()) throw LookupError("alias target '" + target + "' is not a parameter");
  aliases_[name] = target;
}

bool ParameterSet::contains(std::string_view name) const {
  return index_.find(name) != index_.end() || aliases_.find(name) != aliases_.end();
}

const Tensor& ParameterSet::get(std::string_view name) const {
  if (auto a = aliases_.find(name); a != aliases_.end()) return get(a->second);
  auto it = index_.find(name);
  if (it == index_.end()) throw LookupError("unknown parameter '" + std::string(name) + "'");
  return *tensors_[it->second];
}

Tensor& ParameterSet::get(std::string_view name) {
  return const_cast<Tensor&>(std::as_const(*this).get(name));
}

std::optional<std::string> ParameterSet::alias_target(std::string_view name) const {
  if (auto a = aliases_.find(name); a != aliases_.end()) return a->second;
  return std::nullopt;
}

std::vector<Tensor*> ParameterSet::unique() {
  std::vector<Tensor*> out;
  for (auto& t : tensors_) out.push_back(t.get());
  return out;
}

std::vector<const Tensor*> ParameterSet::unique() const {
  std::vector<const Tensor*> out;
  for (const auto& t : tensors_) out.push_back(t.get());
  return out;
}

std::size_t ParameterSet::count() const {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += t->size();
  return n;
}

ParameterSet::Snapshot ParameterSet::snapshot() const {
  Snapshot s;
  for (const auto& t : tensors_) s.emplace_back(t->data().begin(), t->data().end());
  return s;
}

void ParameterSet::restore(const Snapshot& snapshot) {
  if (snapshot.size() != tensors_.size()) throw ArgumentError("snapshot has wrong tensor count");
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    if (snapshot[i].size() != tensors_[i]->size()) {
      throw DimensionError("snapshot size mismatch for '" + names_[i] + "'");
    }
    std::copy(snapshot[i].begin(), snapshot[i].end(), tensors_[i]->data().begin());
  }
}

// ---------------------------------------------------------------------------
// Chain inputs

std::string predicate_unit(Direction direction, std::string_view predicate_iri) {
  return std::string(sign(direction)) + std::string(predicate_iri);
}

ChainInput make_chain_input(const CoreChain& chain, const KnowledgeGraph& kg,
                            const SurfaceForms& forms) {
  ChainInput in;
  in.linear = linearize(chain, kg, forms);
  in.hops[0] = hop_tokens(chain, 1, kg, forms);
  in.hops[1] = hop_tokens(chain, 2, kg, forms);
  for (const Hop& h : chain.hops) {
    in.units.push_back(predicate_unit(h.direction, kg.predicate_name(h.predicate)));
  }
  return in;
}

std::vector<std::string> predicate_units(const KnowledgeGraph& kg) {
  std::vector<std::string> out;
  for (PredicateId p = 0; p < kg.predicate_count(); ++p) {
    if (kg.type_predicate() == p) continue;
    for (Direction d : {Direction::kForward, Direction::kReverse}) {
      out.push_back(predicate_unit(d, kg.predicate_name(p)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Attention tables

void write_attention_tsv(std::ostream& out, const std::vector<AttentionEntry>& table) {
  out << "slot\ttoken\tweight\n";
  for (const auto& e : table) {
    out << e.slot << '\t' << e.token << '\t' << std::setprecision(17) << e.weight << '\n';
  }
}

std::vector<AttentionEntry> read_attention_tsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "slot\ttoken\tweight") {
    throw ParseError("attention table", 1, "missing header");
  }
  std::vector<AttentionEntry> out;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto a = line.find('\t');
    const auto b = line.rfind('\t');
    if (a == std::string::npos || a == b) throw ParseError("attention table", number, "need 3 columns");
    AttentionEntry e;
    try {
      e.slot = std::stoi(line.substr(0, a));
      e.weight = std::stod(line.substr(b + 1));
    } catch (const std::exception&) {
      throw ParseError("attention table", number, "bad number");
    }
    e.token = line.substr(a + 1, b - a - 1);
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// RankingModel

namespace {

bool is_bias(const std::string& name) {
  return name.size() >= 2 && name.compare(name.size() - 2, 2, ".b") == 0;
}

void make_bilstm(ParameterSet& ps, const std::string& prefix, std::size_t input,
                 std::size_t hidden) {
  for (const char* dir : {".fw", ".bw"}) {
    ps.create(prefix + dir + ".w", {4 * hidden, input + hidden});
    ps.create(prefix + dir + ".b", {4 * hidden});
  }
}

void alias_group(ParameterSet& ps, const std::string& from, const std::string& to,
                 std::span<const std::string> suffixes) {
  for (const auto& s : suffixes) ps.alias(from + s, to + s);
}

const std::string kLstmSuffixes[] = {".fw.w", ".fw.b", ".bw.w", ".bw.b"};
const std::string kConvSuffixes[] = {".conv3.w", ".conv3.b", ".conv4.w", ".conv4.b",
                                     ".conv5.w", ".conv5.b", ".out.w",   ".out.b"};

void make_conv(ParameterSet& ps, const std::string& prefix, std::size_t input,
               std::size_t filters, std::size_t out) {
  for (std::size_t w : ConvEncoder::kWidths) {
    const std::string base = prefix + ".conv" + std::to_string(w);
    ps.create(base + ".w", {filters, w * input});
    ps.create(base + ".b", {filters});
  }
  ps.create(prefix + ".out.w", {out, 3 * filters});
  ps.create(prefix + ".out.b", {out});
}

BiLstm wire_bilstm(const ParameterSet& ps, const std::string& prefix) {
  return BiLstm{{&ps.get(prefix + ".fw.w"), &ps.get(prefix + ".fw.b")},
                {&ps.get(prefix + ".bw.w"), &ps.get(prefix + ".bw.b")}};
}

ConvEncoder wire_conv(const ParameterSet& ps, const std::string& prefix) {
  ConvEncoder c;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string base = prefix + ".conv" + std::to_string(ConvEncoder::kWidths[k]);
    c.filters[k] = &ps.get(base + ".w");
    c.biases[k] = &ps.get(base + ".b");
  }
  c.out_w = &ps.get(prefix + ".out.w");
  c.out_b = &ps.get(prefix + ".out.b");
  return c;
}

std::string key_of(const Tokens& tokens) { return join(tokens, "\x1f"); }

}  // namespace

RankingModel::RankingModel(ModelConfig config, Vocabulary vocabulary,
                           std::vector<std::string> units)
    : config_(config), vocabulary_(std::move(vocabulary)) {
  if (config_.embedding_dim == 0 || config_.hidden == 0) {
    throw ConfigurationError("embedding and hidden sizes must be positive");
  }
  if (config_.kind == ModelKind::kSlotDot && config_.embedding_dim != 2 * config_.hidden) {
    throw ConfigurationError("slot model needs embedding_dim == 2 * hidden, got " +
                             std::to_string(config_.embedding_dim) + " and " +
                             std::to_string(config_.hidden));
  }
  if (config_.kind == ModelKind::kCnnDot && config_.cnn_filters == 0) {
    throw ConfigurationError("cnn_filters must be positive");
  }
  if (config_.kind == ModelKind::kDamDot && config_.dam_hidden == 0) {
    throw ConfigurationError("dam_hidden must be positive");
  }
  if (config_.kind == ModelKind::kHrmDot) {
    units_.push_back(std::string(kUnkToken));
    for (auto& u : units) {
      if (u != kUnkToken) units_.push_back(std::move(u));
    }
    for (std::size_t i = 0; i < units_.size(); ++i) unit_index_.emplace(units_[i], i);
  }
  build();

  Random rng(config_.seed);
  for (const auto& name : params_.names()) {
    Tensor& t = params_.get(name);
    if (!is_bias(name)) diff::glorot_uniform(t, rng);
  }
}

void RankingModel::build() {
  const std::size_t d = config_.embedding_dim;
  const std::size_t h = config_.hidden;
  const std::size_t out = 2 * h;
  const bool share = config_.share_encoders;
  ParameterSet& ps = params_;

  ps.create("embedding", {vocabulary_.size(), d});
  switch (config_.kind) {
    case ModelKind::kBilstmDot:
    case ModelKind::kBilstmDenseDot:
    case ModelKind::kSlotDot:
    case ModelKind::kDamDot:
    case ModelKind::kHrmDot:
      make_bilstm(ps, "question", d, h);
      if (share) {
        alias_group(ps, "chain", "question", kLstmSuffixes);
      } else {
        make_bilstm(ps, "chain", d, h);
      }
      break;
    case ModelKind::kCnnDot:
      make_conv(ps, "question", d, config_.cnn_filters, out);
      if (share) {
        alias_group(ps, "chain", "question", kConvSuffixes);
      } else {
        make_conv(ps, "chain", d, config_.cnn_filters, out);
      }
      break;
  }
  switch (config_.kind) {
    case ModelKind::kBilstmDenseDot:
      ps.create("compare.w", {out, out});
      ps.create("compare.b", {out});
      break;
    case ModelKind::kSlotDot:
      ps.create("slot.k1", {out});
      ps.create("slot.k2", {out});
      break;
    case ModelKind::kDamDot:
      ps.create("dam.compare.w", {config_.dam_hidden, 2 * out});
      ps.create("dam.compare.b", {config_.dam_hidden});
      break;
    case ModelKind::kHrmDot:
      make_bilstm(ps, "question2", out, h);
      ps.create("units", {units_.size(), d});
      make_bilstm(ps, "predicate", d, h);
      break;
    default:
      break;
  }

  embedding_ = &ps.get("embedding");
  if (config_.kind == ModelKind::kCnnDot) {
    question_conv_ = wire_conv(ps, "question");
    chain_conv_ = wire_conv(ps, "chain");
  } else {
    question_lstm_ = wire_bilstm(ps, "question");
    chain_lstm_ = wire_bilstm(ps, "chain");
  }
  if (ps.contains("compare.w")) compare_ff_ = {&ps.get("compare.w"), &ps.get("compare.b")};
  if (ps.contains("slot.k1")) slot_keys_ = {&ps.get("slot.k1"), &ps.get("slot.k2")};
  if (ps.contains("dam.compare.w")) dam_ff_ = {&ps.get("dam.compare.w"), &ps.get("dam.compare.b")};
  if (config_.kind == ModelKind::kHrmDot) {
    question2_lstm_ = wire_bilstm(ps, "question2");
    predicate_lstm_ = wire_bilstm(ps, "predicate");
    unit_embedding_ = &ps.get("units");
  }
}

RankingModel RankingModel::clone() const {
  RankingModel copy(config_, vocabulary_, units_);
  copy.params_.restore(params_.snapshot());
  return copy;
}

std::size_t RankingModel::output_dim() const {
  const std::size_t out = 2 * config_.hidden;
  switch (config_.kind) {
    case ModelKind::kSlotDot:
      return 2 * out;
    case ModelKind::kDamDot:
      return out + config_.dam_hidden;
    default:
      return out;
  }
}

std::size_t RankingModel::load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embedding file " + path.string());
  return load_embeddings(in, path.string());
}

std::size_t RankingModel::load_embeddings(std::istream& in, const std::string& source) {
  Tensor& table = params_.get("embedding");
  const std::size_t d = config_.embedding_dim;
  std::string line;
  std::size_t number = 0, replaced = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    std::vector<double> values;
    double v;
    while (fields >> v) values.push_back(v);
    if (!fields.eof()) throw ParseError(source, number, "non-numeric embedding value");
    if (values.size() != d) {
      throw ParseError(source, number,
                       "expected " + std::to_string(d) + " values, got " +
                           std::to_string(values.size()));
    }
    if (!vocabulary_.contains(token)) continue;
    const std::size_t row = vocabulary_.index(token);
    std::copy(values.begin(), values.end(), table.data().begin() + row * d);
    ++replaced;
  }
  return replaced;
}

double RankingModel::score(const Tokens& question, const ChainInput& chain) const {
  Tape tape(false);
  Scorer scorer(*this, tape);
  return scorer.sim(question, chain).scalar();
}

std::vector<double> RankingModel::scores(const Tokens& question,
                                         std::span<const ChainInput> chains) const {
  Tape tape(false);
  Scorer scorer(*this, tape);
  std::vector<double> out;
  out.reserve(chains.size());
  for (const auto& c : chains) out.push_back(scorer.sim(question, c).scalar());
  return out;
}

std::vector<std::size_t> RankingModel::rank(const Tokens& question,
                                            std::span<const ChainInput> chains) const {
  if (chains.empty()) throw ArgumentError("rank needs at least one candidate");
  const std::vector<double> s = scores(question, chains);
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
  return order;
}

std::vector<AttentionEntry> RankingModel::export_attention(const Tokens& question) const {
  if (config_.kind != ModelKind::kSlotDot) {
    throw ArgumentError("attention export needs a slot-dot model, got " +
                        std::string(to_string(config_.kind)));
  }
  Tape tape(false);
  Scorer scorer(*this, tape);
  const SlotQuestion q = scorer.encode_slot_question(question);
  std::vector<AttentionEntry> out;
  for (int j = 0; j < 2; ++j) {
    for (std::size_t t = 0; t < question.size(); ++t) {
      out.push_back({j + 1, question[t], q.attention[j][t]});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scorer

namespace {

enum CacheSlot : int { kQuestion = 0, kChain = 1, kQuestion2 = 2, kPredicate = 3, kHop = 4 };

}  // namespace

Scorer::Scorer(const RankingModel& model, Tape& tape) : model_(model), tape_(tape) {}

Var Scorer::embed(std::string_view token) {
  const std::size_t row = model_.vocabulary_.index(token);
  auto it = embeddings_.find(row);
  if (it != embeddings_.end()) return it->second;
  Var v = diff::row(tape_, *model_.embedding_, row);
  embeddings_.emplace(row, v);
  return v;
}

std::vector<Var> Scorer::embed(const Tokens& tokens) {
  std::vector<Var> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(embed(t));
  return out;
}

const BiLstmOutput& Scorer::lstm_states(const BiLstm& layer, const Tokens& tokens,
                                        int cache_slot) {
  if (tokens.empty()) throw ArgumentError("cannot encode an empty token sequence");
  auto key = std::make_pair(cache_slot, key_of(tokens));
  auto it = lstm_cache_.find(key);
  if (it != lstm_cache_.end()) return it->second;
  const std::vector<Var> inputs = embed(tokens);
  return lstm_cache_.emplace(std::move(key), run_bilstm(layer, inputs)).first->second;
}

Var Scorer::encode_lstm(const Tokens& tokens) {
  return lstm_states(model_.question_lstm_, tokens, kQuestion).final;
}

Var Scorer::encode_chain_lstm(const Tokens& tokens) {
  return lstm_states(model_.chain_lstm_, tokens, kChain).final;
}

Var Scorer::encode_cnn(const Tokens& tokens, bool question_side) {
  if (tokens.empty()) throw ArgumentError("cannot encode an empty token sequence");
  auto key = std::make_pair(question_side ? kQuestion : kChain, key_of(tokens));
  if (auto it = vector_cache_.find(key); it != vector_cache_.end()) return it->second;
  std::vector<Var> inputs = embed(tokens);
  while (inputs.size() < ConvEncoder::min_length()) inputs.push_back(embed(kPadToken));
  const Var v = run_conv(question_side ? model_.question_conv_ : model_.chain_conv_, inputs);
  vector_cache_.emplace(std::move(key), v);
  return v;
}

SlotQuestion Scorer::encode_slot_question(const Tokens& tokens) {
  const std::string key = key_of(tokens);
  if (auto it = slot_cache_.find(key); it != slot_cache_.end()) return it->second;
  const BiLstmOutput& enc = lstm_states(model_.question_lstm_, tokens, kQuestion);
  const std::vector<Var> emb = embed(tokens);
  std::vector<Var> mixed;
  mixed.reserve(tokens.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) mixed.push_back(diff::add(emb[t], enc.states[t]));

  SlotQuestion q;
  for (std::size_t j = 0; j < 2; ++j) {
    const Var key_vec = tape_.leaf(*model_.slot_keys_[j]);
    std::vector<Var> logits;
    logits.reserve(tokens.size());
    for (const Var& s : enc.states) logits.push_back(diff::dot(s, key_vec));
    const Var alpha = diff::softmax(diff::concat(logits));
    q.attention[j].assign(alpha.value().begin(), alpha.value().end());
    q.slots[j] = diff::weighted_sum(alpha, mixed);
  }
  q.vector = diff::concat(q.slots);
  slot_cache_.emplace(key, q);
  return q;
}

std::array<Var, 2> Scorer::encode_slot_chain(const ChainInput& chain) {
  std::array<Var, 2> out;
  for (std::size_t j = 0; j < 2; ++j) {
    const Tokens& hop = chain.hops[j];
    auto key = std::make_pair(static_cast<int>(kHop), key_of(hop));
    if (auto it = vector_cache_.find(key); it != vector_cache_.end()) {
      out[j] = it->second;
      continue;
    }
    const Var enc = lstm_states(model_.chain_lstm_, hop, kChain).final;
    out[j] = diff::add(enc, diff::mean(embed(hop)));
    vector_cache_.emplace(std::move(key), out[j]);
  }
  return out;
}

namespace {

// Row-wise softmax of a score matrix given as scalar Vars; returns the
// weights and the distributions' values.
std::vector<Var> attend(const std::vector<std::vector<Var>>& scores,
                        std::span<const Var> values,
                        std::vector<std::vector<double>>& weights_out) {
  std::vector<Var> aligned;
  for (const auto& row : scores) {
    const Var w = diff::softmax(diff::concat(row));
    weights_out.emplace_back(w.value().begin(), w.value().end());
    aligned.push_back(diff::weighted_sum(w, values));
  }
  return aligned;
}

}  // namespace

DamEncoding Scorer::encode_dam(const Tokens& question, const Tokens& chain) {
  const BiLstmOutput& a = lstm_states(model_.question_lstm_, question, kQuestion);
  const BiLstmOutput& b = lstm_states(model_.chain_lstm_, chain, kChain);
  const std::size_t m = a.states.size(), n = b.states.size();

  std::vector<std::vector<Var>> e(m, std::vector<Var>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i][j] = diff::dot(a.states[i], b.states[j]);
  }
  std::vector<std::vector<Var>> et(n, std::vector<Var>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) et[j][i] = e[i][j];
  }

  DamEncoding out;
  const std::vector<Var> beta = attend(e, b.states, out.question_to_chain);
  const std::vector<Var> alpha = attend(et, a.states, out.chain_to_question);

  auto summarize = [&](const std::vector<Var>& states, const std::vector<Var>& aligned) {
    std::vector<Var> compared;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const Var pair[] = {states[i], aligned[i]};
      compared.push_back(run_dense(model_.dam_ff_, diff::concat(pair)));
    }
    return diff::sum(compared);
  };
  const Var qs[] = {a.final, summarize(a.states, beta)};
  const Var cs[] = {b.final, summarize(b.states, alpha)};
  out.question = diff::concat(qs);
  out.chain = diff::concat(cs);
  return out;
}

std::pair<Var, Var> Scorer::encode_hrm(const Tokens& question, const ChainInput& chain) {
  Var q;
  auto qkey = std::make_pair(static_cast<int>(kQuestion2), key_of(question));
  if (auto it = vector_cache_.find(qkey); it != vector_cache_.end()) {
    q = it->second;
  } else {
    const BiLstmOutput& first = lstm_states(model_.question_lstm_, question, kQuestion);
    const BiLstmOutput second = run_bilstm(model_.question2_lstm_, first.states);
    q = diff::scale(diff::add(first.final, second.final), 0.5);
    vector_cache_.emplace(std::move(qkey), q);
  }

  const BiLstmOutput& words = lstm_states(model_.chain_lstm_, chain.linear, kChain);
  if (chain.units.empty()) throw ArgumentError("chain has no predicate units");
  auto pkey = std::make_pair(static_cast<int>(kPredicate), key_of(chain.units));
  Var predicates;
  if (auto it = vector_cache_.find(pkey); it != vector_cache_.end()) {
    predicates = it->second;
  } else {
    std::vector<Var> inputs;
    for (const auto& u : chain.units) {
      auto found = model_.unit_index_.find(u);
      const std::size_t idx = found == model_.unit_index_.end() ? 0 : found->second;
      inputs.push_back(diff::row(tape_, *model_.unit_embedding_, idx));
    }
    const BiLstmOutput p = run_bilstm(model_.predicate_lstm_, inputs);
    predicates = diff::mean(p.states);
    vector_cache_.emplace(std::move(pkey), predicates);
  }
  const Var c = diff::scale(diff::add(diff::mean(words.states), predicates), 0.5);
  return {q, c};
}

Var Scorer::compare(Var question, Var chain) {
  if (model_.config_.kind == ModelKind::kBilstmDenseDot) {
    return diff::dot(run_dense(model_.compare_ff_, question), run_dense(model_.compare_ff_, chain));
  }
  return diff::dot(question, chain);
}

Var Scorer::sim(const Tokens& question, const ChainInput& chain) {
  switch (model_.config_.kind) {
    case ModelKind::kBilstmDot:
    case ModelKind::kBilstmDenseDot: {
      const Var q = encode_lstm(question);
      return compare(q, encode_chain_lstm(chain.linear));
    }
    case ModelKind::kCnnDot: {
      const Var q = encode_cnn(question, true);
      return compare(q, encode_cnn(chain.linear, false));
    }
    case ModelKind::kSlotDot: {
      const Var q = encode_slot_question(question).vector;
      const auto c = encode_slot_chain(chain);
      return compare(q, diff::concat(c));
    }
    case ModelKind::kDamDot: {
      const DamEncoding enc = encode_dam(question, chain.linear);
      return compare(enc.question, enc.chain);
    }
    case ModelKind::kHrmDot: {
      const auto [q, c] = encode_hrm(question, chain);
      return compare(q, c);
    }
  }
  throw ArgumentError("unknown model kind");
}

}  // namespace kgqa
