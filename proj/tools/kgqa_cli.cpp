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


// Command-line front end: candidate export, training, fine-tuning,
// evaluation, single-question answering and attention export.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgqa/auxiliary.hpp"
#include "kgqa/candidate_gen.hpp"
#include "kgqa/checkpoint.hpp"
#include "kgqa/dataset.hpp"
#include "kgqa/errors.hpp"
#include "kgqa/kg_store.hpp"
#include "kgqa/pipeline.hpp"
#include "kgqa/query_graph.hpp"
#include "kgqa/training.hpp"

namespace {

using namespace kgqa;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

// Reads `{"<subcommand>": {"<long flag name>": value, ...}, ...}`.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        for (const auto& [name, v] : value.items()) items.push_back({{key}, name, inputs(v)});
      } else {
        items.push_back({{}, key, inputs(value)});
      }
    }
    return items;
  }

 private:
  static std::vector<std::string> inputs(const json& v) {
    if (v.is_array()) {
      std::vector<std::string> out;
      for (const auto& x : v) out.push_back(scalar(x));
      return out;
    }
    return {scalar(v)};
  }
  static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

SurfaceForms load_forms(const std::string& path) {
  return path.empty() ? SurfaceForms{} : SurfaceForms::load(path);
}

std::string absolute(const std::string& path) {
  return path.empty() ? path : std::filesystem::absolute(path).lexically_normal().string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
  if (!out) throw DataError("failed writing " + path);
}

std::vector<RankingExample> subset(const std::vector<RankingExample>& all,
                                   const std::vector<std::size_t>& idx) {
  std::vector<RankingExample> out;
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

json report_json(const TrainReport& r) {
  return {{"initial_validation_cca", r.initial_validation_cca},
          {"train_loss", r.train_loss},
          {"validation_cca", r.validation_cca},
          {"best_epoch", r.best_epoch},
          {"best_validation_cca", r.best_validation_cca},
          {"skipped", r.skipped}};
}

// Options shared by the training commands.
struct TrainFlags {
  std::string setting = "pairwise";
  std::size_t epochs = 300;
  std::size_t patience = 20;
  std::size_t negatives = 100;
  double lr = 1e-3;
  double margin = 1.0;
  std::uint64_t seed = 0;
  bool no_split = false;
  bool fixed_negatives = false;
  std::string report;

  void attach(CLI::App* cmd) {
    cmd->add_option("--setting", setting, "pointwise or pairwise")
        ->check(CLI::IsMember({"pointwise", "pairwise"}));
    cmd->add_option("--epochs", epochs, "maximum epochs");
    cmd->add_option("--patience", patience, "early-stopping patience in epochs");
    cmd->add_option("--negatives", negatives, "negative chains per question");
    cmd->add_option("--margin", margin, "pairwise hinge margin");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_flag("--no-split", no_split,
                  "train and validate on the whole dataset instead of a 70-10-20 split");
    cmd->add_flag("--fixed-negatives", fixed_negatives, "draw negatives once, not every epoch");
    cmd->add_option("--report", report, "write the training report as JSON");
  }

  TrainConfig config() const {
    TrainConfig c;
    c.setting = parse_setting(setting);
    c.max_epochs = epochs;
    c.patience = patience;
    c.negatives = negatives;
    c.lr = lr;
    c.fine_tune_lr = lr;
    c.margin = margin;
    c.seed = seed;
    c.resample_each_epoch = !fixed_negatives;
    return c;
  }
};

struct Splits {
  std::vector<RankingExample> train, validation;
};

Splits make_splits(const std::vector<RankingExample>& all, const TrainFlags& flags) {
  if (flags.no_split) return {all, {}};
  const DatasetSplit s = split_dataset(all.size(), flags.seed);
  return {subset(all, s.train), subset(all, s.validation)};
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::RequiredError(flag);
}

AuxiliaryModels load_aux(const std::string& list) {
  const auto paths = split_commas(list);
  if (paths.size() != 3) {
    throw CLI::ValidationError("--aux-ckpts", "expected three comma-separated checkpoints");
  }
  return AuxiliaryModels{load_classifier(paths[0]), load_classifier(paths[1]),
                         load_ranking_model(paths[2])};
}

int run(int argc, char** argv) {
  CLI::App app{"Knowledge-graph question answering by core-chain ranking"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with per-subcommand option values");
  app.require_subcommand(1);

  // candidates
  std::string kg_path, dataset_path, out_path, forms_path;
  bool strict = false;
  auto* candidates = app.add_subcommand("candidates", "write candidate chains per question");
  candidates->add_option("--kg", kg_path, "knowledge graph TSV");
  candidates->add_option("--dataset", dataset_path, "dataset JSON lines");
  candidates->add_option("--out", out_path, "output JSON lines");
  candidates->add_option("--surface-forms", forms_path, "surface-form overrides TSV");
  candidates->add_flag("--strict-two-entity", strict, "drop one-hop chains between two entities");

  // train
  std::string model_kind = "slot-dot", embeddings_path, coalesce_path, vocab_extra;
  bool share = false;
  std::size_t embedding_dim = 300, hidden = 150, cnn_filters = 100, dam_hidden = 300;
  TrainFlags train_flags;
  auto* train_cmd = app.add_subcommand("train", "train a core-chain ranking model");
  train_cmd->add_option("--model", model_kind, "model kind")
      ->check(CLI::IsMember({"bilstm-dot", "bilstm-dense-dot", "cnn-dot", "slot-dot", "dam-dot",
                             "hrm-dot"}));
  train_cmd->add_option("--kg", kg_path, "knowledge graph TSV");
  train_cmd->add_option("--dataset", dataset_path, "training dataset JSON lines");
  train_cmd->add_option("--out", out_path, "checkpoint to write");
  train_cmd->add_option("--embeddings", embeddings_path, "pretrained embeddings text file");
  train_cmd->add_option("--surface-forms", forms_path, "surface-form overrides TSV");
  train_cmd->add_flag("--share-encoders", share, "share question and chain encoders");
  train_cmd->add_flag("--strict-two-entity", strict, "drop one-hop chains between two entities");
  train_cmd->add_option("--embedding-dim", embedding_dim, "embedding size");
  train_cmd->add_option("--hidden", hidden, "LSTM hidden size per direction");
  train_cmd->add_option("--cnn-filters", cnn_filters, "filters per convolution width");
  train_cmd->add_option("--dam-hidden", dam_hidden, "decomposable-attention layer width");
  train_cmd->add_option("--lr", train_flags.lr, "learning rate");
  train_cmd->add_option("--coalesce", coalesce_path, "second dataset trained jointly");
  train_cmd->add_option("--vocab-datasets", vocab_extra,
                        "comma-separated datasets whose words join the vocabulary");
  train_flags.attach(train_cmd);

  // finetune
  std::string ckpt_path;
  TrainFlags ft_flags;
  ft_flags.lr = 1e-4;
  auto* finetune = app.add_subcommand("finetune", "continue training at a lower learning rate");
  finetune->add_option("--ckpt", ckpt_path, "pretrained checkpoint");
  finetune->add_option("--dataset", dataset_path, "target dataset JSON lines");
  finetune->add_option("--out", out_path, "checkpoint to write");
  finetune->add_option("--kg", kg_path, "knowledge graph TSV (default: the checkpoint's)");
  finetune->add_option("--lr", ft_flags.lr, "fine-tuning learning rate");
  ft_flags.attach(finetune);

  // train-aux
  ClassifierTrainConfig aux_config;
  bool class_weights = false;
  auto* train_aux = app.add_subcommand(
      "train-aux", "train the intent, placement and class models");
  train_aux->add_option("--kg", kg_path, "knowledge graph TSV");
  train_aux->add_option("--dataset", dataset_path, "training dataset JSON lines");
  train_aux->add_option("--out", out_path, "three comma-separated checkpoint paths");
  train_aux->add_option("--surface-forms", forms_path, "surface-form overrides TSV");
  train_aux->add_option("--embedding-dim", embedding_dim, "embedding size");
  train_aux->add_option("--hidden", hidden, "LSTM hidden size per direction");
  train_aux->add_option("--epochs", aux_config.max_epochs, "maximum epochs");
  train_aux->add_option("--lr", aux_config.lr, "learning rate");
  train_aux->add_option("--seed", aux_config.seed, "random seed");
  train_aux->add_flag("--class-weights", class_weights, "inverse-frequency label weights");
  train_aux->add_option("--vocab-datasets", vocab_extra,
                        "comma-separated datasets whose words join the vocabulary");

  // eval
  std::string aux_paths, report_path;
  auto* eval = app.add_subcommand("eval", "evaluate the full pipeline on a dataset");
  eval->add_option("--ckpt", ckpt_path, "ranking checkpoint");
  eval->add_option("--aux-ckpts", aux_paths, "intent,placement,class checkpoints");
  eval->add_option("--kg", kg_path, "knowledge graph TSV");
  eval->add_option("--dataset", dataset_path, "dataset JSON lines");
  eval->add_option("--report", report_path, "report JSON to write");
  eval->add_option("--surface-forms", forms_path, "surface-form overrides TSV");
  eval->add_flag("--strict-two-entity", strict, "drop one-hop chains between two entities");

  // answer
  std::string question, entities;
  std::size_t top_k = 5;
  auto* answer = app.add_subcommand("answer", "answer one question");
  answer->add_option("--ckpt", ckpt_path, "ranking checkpoint");
  answer->add_option("--aux-ckpts", aux_paths, "intent,placement,class checkpoints");
  answer->add_option("--kg", kg_path, "knowledge graph TSV");
  answer->add_option("--question", question, "question text");
  answer->add_option("--entities", entities, "one or two comma-separated entity IRIs");
  answer->add_option("--top-k", top_k, "ranked chains to show");
  answer->add_option("--surface-forms", forms_path, "surface-form overrides TSV");
  answer->add_flag("--strict-two-entity", strict, "drop one-hop chains between two entities");

  // attention
  auto* attention = app.add_subcommand("attention", "export slot attention weights as TSV");
  attention->add_option("--ckpt", ckpt_path, "slot-dot checkpoint");
  attention->add_option("--question", question, "question text");
  attention->add_option("--out", out_path, "TSV to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (candidates->parsed()) {
      require(kg_path, "--kg");
      require(dataset_path, "--dataset");
      require(out_path, "--out");
      const auto kg = KnowledgeGraph::load(kg_path);
      const auto forms = load_forms(forms_path);
      std::ostringstream out;
      for (const auto& ex : load_dataset(dataset_path)) {
        const RankingExample r = make_ranking_example(ex, kg, forms, {strict});
        json rec;
        rec["id"] = ex.id;
        json cands = json::array();
        for (const auto& c : r.candidates) cands.push_back(join(c.linear));
        rec["candidates"] = cands;
        rec["gold_index"] = r.gold ? json(*r.gold) : json(nullptr);
        out << rec.dump() << '\n';
      }
      write_text(out_path, out.str());
    } else if (train_cmd->parsed()) {
      require(kg_path, "--kg");
      require(dataset_path, "--dataset");
      require(out_path, "--out");
      const auto kg = KnowledgeGraph::load(kg_path);
      const auto forms = load_forms(forms_path);
      std::vector<std::vector<QAExample>> datasets{load_dataset(dataset_path)};
      if (!coalesce_path.empty()) datasets.push_back(load_dataset(coalesce_path));
      for (const auto& p : split_commas(vocab_extra)) datasets.push_back(load_dataset(p));

      ModelConfig mc;
      mc.kind = parse_model_kind(model_kind);
      mc.embedding_dim = embedding_dim;
      mc.hidden = hidden;
      mc.cnn_filters = cnn_filters;
      mc.dam_hidden = dam_hidden;
      mc.share_encoders = share;
      mc.seed = train_flags.seed;
      RankingModel model(mc, build_vocabulary(kg, forms, datasets), predicate_units(kg));
      if (!embeddings_path.empty()) model.load_embeddings(embeddings_path);

      const CandidateOptions opts{strict};
      Splits splits = make_splits(make_ranking_examples(datasets[0], kg, forms, opts), train_flags);
      if (!coalesce_path.empty()) {
        Splits extra =
            make_splits(make_ranking_examples(datasets[1], kg, forms, opts), train_flags);
        splits.train = coalesce(splits.train, extra.train);
        splits.validation = coalesce(splits.validation, extra.validation);
      }
      const TrainReport report = train(model, splits.train, splits.validation, train_flags.config());
      save_checkpoint(out_path, model,
                      {{"kg", absolute(kg_path)},
                       {"surface_forms", absolute(forms_path)},
                       {"strict_two_entity", strict ? "true" : "false"}});
      json rj = report_json(report);
      rj["checkpoint"] = out_path;
      if (!train_flags.report.empty()) write_text(train_flags.report, rj.dump(2) + "\n");
      std::cout << "best epoch " << report.best_epoch << ", validation CCA "
                << report.best_validation_cca << "\n";
    } else if (finetune->parsed()) {
      require(ckpt_path, "--ckpt");
      require(dataset_path, "--dataset");
      require(out_path, "--out");
      CheckpointMeta meta;
      RankingModel model = load_ranking_model(ckpt_path, &meta);
      if (kg_path.empty()) kg_path = meta["kg"];
      if (kg_path.empty()) throw DataError("no --kg given and the checkpoint names no graph");
      const auto kg = KnowledgeGraph::load(kg_path);
      if (forms_path.empty()) forms_path = meta["surface_forms"];
      const auto forms = load_forms(forms_path);
      const CandidateOptions opts{meta["strict_two_entity"] == "true"};
      const Splits splits =
          make_splits(make_ranking_examples(load_dataset(dataset_path), kg, forms, opts), ft_flags);
      const TrainReport report = fine_tune(model, splits.train, splits.validation, ft_flags.config());
      meta["kg"] = absolute(kg_path);
      save_checkpoint(out_path, model, meta);
      json rj = report_json(report);
      rj["checkpoint"] = out_path;
      if (!ft_flags.report.empty()) write_text(ft_flags.report, rj.dump(2) + "\n");
      std::cout << "best epoch " << report.best_epoch << ", validation CCA "
                << report.best_validation_cca << "\n";
    } else if (train_aux->parsed()) {
      require(kg_path, "--kg");
      require(dataset_path, "--dataset");
      const auto outs = split_commas(out_path);
      if (outs.size() != 3) {
        throw CLI::ValidationError("--out", "expected three comma-separated checkpoint paths");
      }
      const auto kg = KnowledgeGraph::load(kg_path);
      const auto forms = load_forms(forms_path);
      std::vector<std::vector<QAExample>> datasets{load_dataset(dataset_path)};
      for (const auto& p : split_commas(vocab_extra)) datasets.push_back(load_dataset(p));
      const Vocabulary vocab = build_vocabulary(kg, forms, datasets);
      aux_config.class_weights = class_weights;

      ClassifierConfig cc{embedding_dim, hidden, aux_config.seed};
      SequenceClassifier intent = make_intent_classifier(cc, vocab);
      SequenceClassifier placement = make_placement_classifier(cc, vocab);
      train_classifier(intent, intent_examples(datasets[0]), {}, aux_config);
      train_classifier(placement, placement_examples(datasets[0]), {}, aux_config);

      ModelConfig mc;
      mc.kind = ModelKind::kBilstmDot;
      mc.embedding_dim = embedding_dim;
      mc.hidden = hidden;
      mc.seed = aux_config.seed;
      RankingModel classes(mc, vocab);
      const auto class_train = class_examples(datasets[0], kg, forms);
      if (!class_train.empty()) {
        TrainConfig tc;
        tc.lr = aux_config.lr;
        tc.max_epochs = aux_config.max_epochs;
        tc.seed = aux_config.seed;
        train(classes, class_train, {}, tc);
      }
      save_checkpoint(outs[0], intent);
      save_checkpoint(outs[1], placement);
      save_checkpoint(outs[2], classes, {{"kg", absolute(kg_path)}});
    } else if (eval->parsed()) {
      require(ckpt_path, "--ckpt");
      require(aux_paths, "--aux-ckpts");
      require(kg_path, "--kg");
      require(dataset_path, "--dataset");
      require(report_path, "--report");
      const auto kg = KnowledgeGraph::load(kg_path);
      const auto forms = load_forms(forms_path);
      const RankingModel ranker = load_ranking_model(ckpt_path);
      const AuxiliaryModels aux = load_aux(aux_paths);
      PipelineOptions po;
      po.candidates.strict_two_entity = strict;
      const EvalReport report =
          evaluate_pipeline(kg, forms, ranker, &aux, load_dataset(dataset_path), po);
      write_text(report_path, to_json(report));
      std::cout << "CCA " << report.cca << "  MRR " << report.mrr << "  P " << report.precision
                << "  R " << report.recall << "  F1 " << report.f1 << "\n";
    } else if (answer->parsed()) {
      require(ckpt_path, "--ckpt");
      require(aux_paths, "--aux-ckpts");
      require(kg_path, "--kg");
      require(question, "--question");
      require(entities, "--entities");
      const auto kg = KnowledgeGraph::load(kg_path);
      const auto forms = load_forms(forms_path);
      const RankingModel ranker = load_ranking_model(ckpt_path);
      const AuxiliaryModels aux = load_aux(aux_paths);
      std::vector<NodeId> ids;
      for (const auto& iri : split_commas(entities)) ids.push_back(kg.node_id(iri));
      if (ids.empty() || ids.size() > 2) {
        throw CLI::ValidationError("--entities", "expected one or two entity IRIs");
      }
      PipelineOptions po;
      po.top_k = top_k;
      po.candidates.strict_two_entity = strict;
      const Answer a = answer_question(kg, forms, ranker, &aux, tokenize(question), ids, po);
      json out;
      if (!a.answerable) {
        out["answerable"] = false;
      } else {
        out["answerable"] = true;
        out["query"] = a.query_text;
        out["intent"] = std::string(to_string(a.predicted_intent));
        switch (a.answers.kind()) {
          case AnswerSet::Kind::kEntitySet:
            out["answers"] = a.answers.values();
            break;
          case AnswerSet::Kind::kCount:
            out["answers"] = a.answers.count_value();
            break;
          case AnswerSet::Kind::kBoolean:
            out["answers"] = a.answers.boolean_value();
            break;
        }
        json top = json::array();
        for (const auto& s : a.top) top.push_back({{"chain", describe(s.chain, kg)}, {"score", s.score}});
        out["top"] = top;
      }
      std::cout << out.dump(2) << "\n";
    } else if (attention->parsed()) {
      require(ckpt_path, "--ckpt");
      require(question, "--question");
      require(out_path, "--out");
      const RankingModel model = load_ranking_model(ckpt_path);
      std::ostringstream out;
      write_attention_tsv(out, model.export_attention(tokenize(question)));
      write_text(out_path, out.str());
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
