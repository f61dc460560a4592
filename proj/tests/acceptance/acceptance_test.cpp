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


// Acceptance run: one PASS/FAIL line per criterion, non-zero exit status
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "kgqa/auxiliary.hpp"
#include "kgqa/candidate_gen.hpp"
#include "kgqa/checkpoint.hpp"
#include "kgqa/dataset.hpp"
#include "kgqa/diffmath.hpp"
#include "kgqa/metrics.hpp"
#include "kgqa/pipeline.hpp"
#include "kgqa/training.hpp"
#include "oracles.hpp"

namespace {

using namespace kgqa;
using Clock = std::chrono::steady_clock;

std::string data_path(const std::string& name) { return std::string(KGQA_DATA_DIR) + "/" + name; }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Outcome of one criterion: failures collected as text, plus a summary.
struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

// Shared state built once: toy data, vocabulary and the trained models.
struct World {
  KnowledgeGraph kg = KnowledgeGraph::load(data_path("toy_kg.tsv"));
  SurfaceForms forms;
  std::vector<QAExample> toy = load_dataset(data_path("toy_dataset.jsonl"));
  std::vector<QAExample> finetune = load_dataset(data_path("toy_finetune.jsonl"));
  Vocabulary vocabulary;
  std::vector<RankingExample> toy_examples, finetune_examples;
  std::optional<RankingModel> ranker;  // bilstm-dot, pairwise, overfit on toy
  std::optional<TrainReport> ranker_report;

  World() {
    const std::vector<QAExample> sets[] = {toy, finetune};
    vocabulary = build_vocabulary(kg, forms, sets);
    toy_examples = make_ranking_examples(toy, kg, forms);
    finetune_examples = make_ranking_examples(finetune, kg, forms);
  }

  RankingModel fresh(ModelKind kind, std::uint64_t seed = 1) const {
    ModelConfig c;
    c.kind = kind;
    c.seed = seed;
    return RankingModel(c, vocabulary, predicate_units(kg));
  }
};

TrainConfig overfit_config(Setting setting) {
  TrainConfig c;
  c.setting = setting;
  c.seed = 7;
  return c;
}

std::string report_text(const TrainReport& r) {
  std::ostringstream s;
  s << std::setprecision(17) << r.initial_validation_cca << ' ' << r.best_epoch << ' '
    << r.best_validation_cca << ' ' << r.skipped;
  for (double v : r.train_loss) s << ' ' << v;
  for (double v : r.validation_cca) s << ' ' << v;
  return s.str();
}

// 1. Finite-difference gradients for every model kind.
Outcome gradient_oracle() {
  Outcome o;
  const auto start = Clock::now();
  double worst = 0;
  for (ModelKind kind : all_model_kinds()) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto r = fixtures::fd_check_instance(kind, seed);
      worst = std::max(worst, r.max_relative_error);
      o.check(r.max_relative_error < 1e-3, std::string(to_string(kind)) + " seed " +
                                               std::to_string(seed) + " error " +
                                               fmt(r.max_relative_error));
    }
  }
  const double t = seconds_since(start);
  o.check(t < 120, "runtime " + fmt(t) + " s");
  o.summary = "6 kinds x 5 seeds, max relative error " + fmt(worst, 3) + ", " + fmt(t, 3) + " s";
  return o;
}

std::vector<oracle::Triple> without_types(const std::vector<oracle::Triple>& t) {
  std::vector<oracle::Triple> out;
  for (const auto& x : t) {
    if (x.p != "rdf:type") out.push_back(x);
  }
  return out;
}

std::set<oracle::Path> paths_of(const std::vector<CoreChain>& cs, const KnowledgeGraph& kg) {
  std::set<oracle::Path> out;
  for (const auto& c : cs) {
    oracle::Path p;
    for (const Hop& h : c.hops) {
      p.emplace_back(h.direction == Direction::kForward ? '+' : '-', kg.predicate_name(h.predicate));
    }
    out.insert(p);
  }
  return out;
}

std::vector<oracle::Triple> read_triples(const std::string& path) {
  std::vector<oracle::Triple> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto a = line.find('\t'), b = line.find('\t', a + 1);
    out.push_back({line.substr(0, a), line.substr(a + 1, b - a - 1), line.substr(b + 1)});
  }
  return out;
}

// Compares the generator against brute force for every root and a few
// random second entities. Returns the number of comparisons.
std::size_t compare_candidates(const std::vector<oracle::Triple>& raw, std::mt19937_64& rng,
                               Outcome& o, const std::string& label) {
  std::vector<StringTriple> st;
  for (const auto& t : raw) st.push_back({t.s, t.p, t.o});
  const auto kg = KnowledgeGraph::from_triples(st);
  const auto plain = without_types(raw);
  std::size_t n = 0;
  for (NodeId root = 0; root < kg.node_count(); ++root) {
    if (kg.is_literal(root)) continue;
    const std::string name = kg.node_name(root);
    const NodeId one[] = {root};
    ++n;
    if (paths_of(generate_candidates(kg, one), kg) != oracle::enumerate_paths(plain, name)) {
      o.check(false, label + ": root " + name);
    }
    const NodeId two[] = {root, static_cast<NodeId>(rng() % kg.node_count())};
    for (bool strict : {false, true}) {
      ++n;
      const auto got = paths_of(generate_candidates(kg, two, {strict}), kg);
      if (got != oracle::enumerate_paths(plain, name, kg.node_name(two[1]), !strict)) {
        o.check(false, label + ": pair " + name + " / " + kg.node_name(two[1]));
      }
    }
  }
  return n;
}

// 2. Candidate generation against brute-force enumeration.
Outcome candidate_oracle() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t comparisons = 0, graphs = 0;
  while (graphs < 50) {
    const auto raw = oracle::random_graph(rng, 500);
    if (without_types(raw).empty()) continue;
    comparisons += compare_candidates(raw, rng, o, "random graph " + std::to_string(graphs));
    ++graphs;
  }
  comparisons += compare_candidates(read_triples(data_path("astronauts.tsv")), rng, o, "astronauts");
  comparisons += compare_candidates(read_triples(data_path("toy_kg.tsv")), rng, o, "toy graph");
  const double t = seconds_since(start);
  o.check(t < 60, "runtime " + fmt(t) + " s");
  o.summary = std::to_string(comparisons) + " root/pair comparisons on 50 random graphs, the " +
              "astronaut graph and the toy graph, " + fmt(t, 3) + " s";
  return o;
}

// 3. Overfitting the toy set with two model kinds in both settings.
Outcome overfit(World& w) {
  Outcome o;
  const auto start = Clock::now();
  o.check(w.kg.triples().size() + w.kg.type_assertions().size() <= 200, "toy graph too large");
  o.check(w.toy_examples.size() == 50, "toy set must hold 50 questions");
  std::string detail;
  for (ModelKind kind : {ModelKind::kBilstmDot, ModelKind::kSlotDot}) {
    for (Setting setting : {Setting::kPointwise, Setting::kPairwise}) {
      RankingModel m = w.fresh(kind);
      const auto report = train(m, w.toy_examples, {}, overfit_config(setting));
      const double cca = ranking_cca(m, w.toy_examples);
      const std::size_t epochs = report.train_loss.size();
      const std::string name = std::string(to_string(kind)) + "/" + std::string(to_string(setting));
      o.check(cca >= 0.95 && epochs <= 300, name + " CCA " + fmt(cca) + " after " +
                                                std::to_string(epochs) + " epochs");
      detail += (detail.empty() ? "" : ", ") + name + " " + fmt(cca) + " @" +
                std::to_string(report.best_epoch);
      if (kind == ModelKind::kBilstmDot && setting == Setting::kPairwise) {
        w.ranker.emplace(std::move(m));
        w.ranker_report = report;
      }
    }
  }
  const double t = seconds_since(start);
  o.check(t < 600, "runtime " + fmt(t) + " s");
  o.summary = "train CCA (best epoch): " + detail + "; " + fmt(t, 3) + " s";
  return o;
}

AuxiliaryModels train_aux(const World& w) {
  ClassifierConfig cc;
  cc.seed = 3;
  ClassifierTrainConfig tc;
  tc.seed = 3;
  AuxiliaryModels aux{make_intent_classifier(cc, w.vocabulary),
                      make_placement_classifier(cc, w.vocabulary), w.fresh(ModelKind::kBilstmDot, 3)};
  train_classifier(aux.intent, intent_examples(w.toy), {}, tc);
  train_classifier(aux.placement, placement_examples(w.toy), {}, tc);
  TrainConfig rc;
  rc.seed = 3;
  train(aux.class_ranker, class_examples(w.toy, w.kg, w.forms), {}, rc);
  return aux;
}

// The bilstm-dot pairwise model of criterion 3, trained on demand when that
// criterion was not run.
const RankingModel& overfit_ranker(World& w) {
  if (!w.ranker) {
    RankingModel m = w.fresh(ModelKind::kBilstmDot);
    w.ranker_report = train(m, w.toy_examples, {}, overfit_config(Setting::kPairwise));
    w.ranker.emplace(std::move(m));
  }
  return *w.ranker;
}

// 4. End-to-end answers with the overfit ranker and auxiliary models.
Outcome end_to_end(World& w) {
  Outcome o;
  overfit_ranker(w);
  const auto start = Clock::now();
  const AuxiliaryModels aux = train_aux(w);
  const auto report = evaluate_pipeline(w.kg, w.forms, *w.ranker, &aux, w.toy);
  o.check(report.f1 >= 0.9, "macro F1 " + fmt(report.f1));

  struct Worked {
    std::string question;
    std::vector<std::string> entities;
    AnswerSet expected;
  };
  const Worked worked[] = {
      {"What is the birth place of the astronaut whose mission was the vostok programme?",
       {"Vostok_Programme"},
       AnswerSet::entity_set({"Klushino", "Maslennikovo"})},
      {"Is Berlin the capital of Germany?", {"Germany", "Berlin"}, AnswerSet::boolean(true)},
      {"Which movies has Keanu Reeves starred in?", {"Keanu_Reeves"},
       AnswerSet::entity_set({"John_Wick"})},
  };
  std::size_t exact = 0;
  for (const auto& q : worked) {
    std::vector<NodeId> ids;
    for (const auto& e : q.entities) ids.push_back(w.kg.node_id(e));
    const auto a = answer_question(w.kg, w.forms, *w.ranker, &aux, tokenize(q.question), ids);
    bool ok = a.answerable && a.answers == q.expected;
    if (q.entities[0] == "Keanu_Reeves") {
      ok = ok && a.graph && a.graph->class_constraint &&
           a.graph->class_constraint->cls == w.kg.node_id("Film");
    }
    exact += ok;
    o.check(ok, "wrong answer for '" + q.question + "': " + a.query_text);
  }
  o.summary = "macro P/R/F1 " + fmt(report.precision) + "/" + fmt(report.recall) + "/" +
              fmt(report.f1) + ", CCA " + fmt(report.cca) + ", worked questions exact " +
              std::to_string(exact) + "/3, " + fmt(seconds_since(start), 3) + " s";
  return o;
}

// 5. Loss, normalization and clipping properties.
Outcome properties() {
  Outcome o;
  Random rng(17);
  std::size_t checks = 0;
  for (int k = 0; k < 1000; ++k) {
    const double p = rng.uniform(-5, 5), n = rng.uniform(-5, 5), g = rng.uniform(0.01, 3);
    const double l = pairwise_loss(p, n, g);
    o.check(l >= 0 && ((l == 0) == (p - n >= g)), "pairwise zero set at " + fmt(p) + "," + fmt(n));
    const double s = rng.uniform(-20, 20), d = rng.uniform(1e-3, 5);
    o.check(pointwise_loss(s, 1) > pointwise_loss(s + d, 1), "pointwise t=1 not decreasing at " + fmt(s));
    o.check(pointwise_loss(s, 0) < pointwise_loss(s + d, 0), "pointwise t=0 not increasing at " + fmt(s));
    checks += 3;
  }
  for (int k = 0; k < 200; ++k) {
    std::vector<double> x(1 + rng.index(10));
    for (auto& v : x) v = rng.uniform(-50, 50);
    diff::Tape tape;
    const auto sm = diff::softmax(tape.constant(x));
    double total = 0;
    for (double v : sm.value()) total += v;
    o.check(std::abs(total - 1) <= 1e-6, "softmax sums to " + fmt(total, 17));
    ++checks;
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Random r(seed);
    const Tokens q = fixtures::random_question(r, 1 + r.index(8));
    const ChainInput c = fixtures::random_chain(r, 1 + r.index(2));
    const auto slot = fixtures::small_model(ModelKind::kSlotDot, seed);
    for (int j = 1; j <= 2; ++j) {
      double total = 0;
      for (const auto& e : slot.export_attention(q)) total += e.slot == j ? e.weight : 0;
      o.check(std::abs(total - 1) <= 1e-6, "slot attention row sums to " + fmt(total, 17));
    }
    const auto dam = fixtures::small_model(ModelKind::kDamDot, seed);
    diff::Tape tape;
    Scorer scorer(dam, tape);
    const auto enc = scorer.encode_dam(q, c.linear);
    for (const auto* rows : {&enc.question_to_chain, &enc.chain_to_question}) {
      for (const auto& row : *rows) {
        const double total = std::accumulate(row.begin(), row.end(), 0.0);
        o.check(std::abs(total - 1) <= 1e-6, "alignment row sums to " + fmt(total, 17));
      }
    }
    checks += 4;
  }
  diff::Tensor a({4}), b({7});
  for (int k = 0; k < 1000; ++k) {
    diff::Gradients g;
    const double mag = std::pow(10.0, rng.uniform(-4, 4));
    for (auto& v : g.accumulator(a)) v = mag * rng.uniform(-1, 1);
    for (auto& v : g.accumulator(b)) v = mag * rng.uniform(-1, 1);
    const double before = std::sqrt(g.squared_norm());
    std::vector<double> pre(g.of(b).begin(), g.of(b).end());
    diff::clip_gradients(g, 0.5);
    const double after = std::sqrt(g.squared_norm());
    o.check(after <= 0.5 + 1e-12, "clipped norm " + fmt(after, 17));
    if (before <= 0.5) {
      o.check(std::equal(pre.begin(), pre.end(), g.of(b).begin()), "small gradient changed");
    }
    std::vector<double> once(g.of(b).begin(), g.of(b).end());
    diff::clip_gradients(g, 0.5);
    for (std::size_t i = 0; i < once.size(); ++i) {
      o.check(std::abs(g.of(b)[i] - once[i]) <= 1e-15 * std::abs(once[i]), "clip not idempotent");
    }
    checks += 3;
  }
  o.summary = std::to_string(checks) + " property checks";
  return o;
}

// 6. Metrics against naive definitions.
Outcome metric_oracle() {
  Outcome o;
  std::mt19937_64 rng(99);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng() % 15;
    std::vector<std::vector<std::size_t>> rankings(n);
    std::vector<std::optional<std::size_t>> gold(n);
    for (std::size_t i = 0; i < n; ++i) {
      rankings[i].resize(rng() % 10);
      std::iota(rankings[i].begin(), rankings[i].end(), 0);
      std::shuffle(rankings[i].begin(), rankings[i].end(), rng);
      if (rng() % 6) gold[i] = rng() % 11;
    }
    const double c = cca(rankings, gold), m = mrr(rankings, gold);
    o.check(c == oracle::cca(rankings, gold), "cca differs in case " + std::to_string(k));
    o.check(m == oracle::mrr(rankings, gold), "mrr differs in case " + std::to_string(k));
    o.check(m >= c, "mrr below cca in case " + std::to_string(k));

    std::set<std::string> p, g;
    for (std::size_t i = rng() % 7; i > 0; --i) p.insert("e" + std::to_string(rng() % 9));
    for (std::size_t i = rng() % 7; i > 0; --i) g.insert("e" + std::to_string(rng() % 9));
    const Prf got = answer_prf(AnswerSet::entity_set(p), AnswerSet::entity_set(g));
    const auto want = oracle::set_prf(p, g);
    o.check(got.precision == want.p && got.recall == want.r && got.f1 == want.f,
            "answer_prf differs in case " + std::to_string(k));
    const std::uint64_t x = rng() % 4, y = rng() % 4;
    const Prf count = answer_prf(AnswerSet::count(x), AnswerSet::count(y));
    o.check(count == (x == y ? Prf{1, 1, 1} : Prf{}), "count score in case " + std::to_string(k));
  }
  o.summary = "1000 random configurations, exact agreement";
  return o;
}

// 7. Determinism of training and evaluation, and bit-exact checkpoints.
Outcome determinism(World& w) {
  Outcome o;
  overfit_ranker(w);
  RankingModel again = w.fresh(ModelKind::kBilstmDot);
  const auto report = train(again, w.toy_examples, {}, overfit_config(Setting::kPairwise));
  o.check(report_text(report) == report_text(*w.ranker_report), "training reports differ");
  o.check(again.parameters().snapshot() == w.ranker->parameters().snapshot(), "parameters differ");

  const auto e1 = to_json(evaluate_pipeline(w.kg, w.forms, *w.ranker, nullptr, w.toy));
  const auto e2 = to_json(evaluate_pipeline(w.kg, w.forms, again, nullptr, w.toy));
  o.check(e1 == e2, "evaluation reports differ");

  const auto path = std::filesystem::temp_directory_path() / "kgqa_acceptance_ckpt.json";
  save_checkpoint(path, *w.ranker, {{"kg", "toy_kg.tsv"}});
  const RankingModel loaded = load_ranking_model(path);
  std::filesystem::remove(path);
  std::size_t scores = 0;
  for (const auto& set : {&w.toy_examples, &w.finetune_examples}) {
    for (const auto& ex : *set) {
      const auto a = w.ranker->scores(ex.question, ex.candidates);
      const auto b = loaded.scores(ex.question, ex.candidates);
      o.check(a == b, "scores differ after reload for " + ex.id);
      scores += a.size();
    }
  }
  o.summary = "identical reports (" + std::to_string(e1.size()) + " bytes), " +
              std::to_string(scores) + " candidate scores bit-identical after reload";
  return o;
}

// 8. Fine-tuning mechanics. The pretrained model is the overfit ranker,
// whose validation set is the whole pretraining set; it is then tuned on the
// disjoint fine-tuning set.
Outcome transfer(World& w) {
  Outcome o;
  const RankingModel& pretrained = overfit_ranker(w);
  TrainConfig c = overfit_config(Setting::kPairwise);

  RankingModel frozen = pretrained.clone();
  c.fine_tune_lr = 0;
  fine_tune(frozen, w.finetune_examples, {}, c);
  o.check(frozen.parameters().snapshot() == pretrained.parameters().snapshot(),
          "lr=0 changed parameters");

  RankingModel tuned = pretrained.clone();
  c.fine_tune_lr = 1e-4;
  const auto report = fine_tune(tuned, w.finetune_examples, {}, c);
  const double ft_before = ranking_cca(pretrained, w.finetune_examples);
  const double ft_after = ranking_cca(tuned, w.finetune_examples);
  const double pre_before = ranking_cca(pretrained, w.toy_examples);
  const double pre_after = ranking_cca(tuned, w.toy_examples);
  o.check(ft_after - ft_before >= 0.2 - 1e-12,
          "fine-tune set CCA " + fmt(ft_before) + " -> " + fmt(ft_after));
  o.check(pre_before - pre_after <= 0.02 + 1e-12,
          "pretraining validation CCA " + fmt(pre_before) + " -> " + fmt(pre_after));
  o.summary = "lr=0 no-op; fine-tune set CCA " + fmt(ft_before) + " -> " + fmt(ft_after) +
              " in " + std::to_string(report.train_loss.size()) +
              " epochs; pretraining validation CCA " + fmt(pre_before) + " -> " + fmt(pre_after) +
              " (" + std::to_string(w.toy_examples.size()) + " questions)";
  return o;
}

// 9. Encoder sharing changes parameter counts and survives checkpoints.
Outcome sharing(const World& w) {
  Outcome o;
  std::string detail;
  for (ModelKind kind : all_model_kinds()) {
    ModelConfig c;
    c.kind = kind;
    const RankingModel plain(c, w.vocabulary, predicate_units(w.kg));
    c.share_encoders = true;
    const RankingModel shared(c, w.vocabulary, predicate_units(w.kg));
    std::size_t chain = 0;
    for (const auto& name : plain.parameters().names()) {
      if (name.rfind("chain.", 0) != 0) continue;
      chain += plain.parameters().get(name).size();
      o.check(shared.parameters().alias_target(name) == "question." + name.substr(6),
              std::string(to_string(kind)) + ": " + name + " not aliased");
    }
    const std::size_t diff = plain.parameters().count() - shared.parameters().count();
    o.check(chain > 0 && diff == chain, std::string(to_string(kind)) + ": count drops by " +
                                           std::to_string(diff) + ", chain encoder has " +
                                           std::to_string(chain));
    for (const RankingModel* m : {&plain, &shared}) {
      const RankingModel back = ranking_from_json(checkpoint_json(*m));
      o.check(back.config().share_encoders == m->config().share_encoders &&
                  back.parameters().count() == m->parameters().count() &&
                  back.parameters().aliases() == m->parameters().aliases(),
              std::string(to_string(kind)) + ": sharing not persisted");
    }
    if (kind == ModelKind::kBilstmDot || kind == ModelKind::kCnnDot) {
      detail += (detail.empty() ? "" : ", ") + std::string(to_string(kind)) + " " +
                std::to_string(plain.parameters().count()) + " -> " +
                std::to_string(shared.parameters().count());
    }
  }
  o.summary = "all six kinds alias chain.* to question.*; " + detail;
  return o;
}

}  // namespace

// Arguments, when given, select criteria by number.
int main(int argc, char** argv) {
  std::cout << std::unitbuf;
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  World world;
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "gradient oracle", gradient_oracle},
      {2, "candidate oracle", candidate_oracle},
      {3, "overfit run", [&] { return overfit(world); }},
      {4, "end-to-end answers", [&] { return end_to_end(world); }},
      {5, "loss and score properties", properties},
      {6, "metric oracle", metric_oracle},
      {7, "determinism and serialization", [&] { return determinism(world); }},
      {8, "transfer-learning mechanics", [&] { return transfer(world); }},
      {9, "parameter-sharing contract", [&] { return sharing(world); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = o.failures.empty();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name
              << "): " << o.summary;
    if (!pass) {
      std::cout << " | " << o.failures.size() << " failure(s), first: " << o.failures.front();
    }
    std::cout << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}
