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


#include "kgqa/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kgqa/errors.hpp"

namespace kgqa {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "kgqa-checkpoint";

json parameters_json(const ParameterSet& ps) {
  json params = json::object();
  for (const auto& name : ps.names()) {
    const diff::Tensor& t = ps.get(name);
    params[name] = {{"shape", t.shape()},
                    {"data", std::vector<double>(t.data().begin(), t.data().end())}};
  }
  json aliases = json::object();
  for (const auto& [name, target] : ps.aliases()) aliases[name] = target;
  return {{"tensors", params}, {"aliases", aliases}};
}

void read_parameters(const json& j, ParameterSet& ps) {
  const json& tensors = j.at("tensors");
  if (tensors.size() != ps.names().size()) {
    throw DataError("checkpoint holds " + std::to_string(tensors.size()) +
                    " tensors, model expects " + std::to_string(ps.names().size()));
  }
  for (const auto& name : ps.names()) {
    if (!tensors.contains(name)) throw DataError("checkpoint lacks parameter '" + name + "'");
    const json& entry = tensors.at(name);
    diff::Tensor& t = ps.get(name);
    if (entry.at("shape").get<diff::Shape>() != t.shape()) {
      throw DataError("parameter '" + name + "' has shape " +
                      diff::to_string(entry.at("shape").get<diff::Shape>()) + ", expected " +
                      diff::to_string(t.shape()));
    }
    const auto data = entry.at("data").get<std::vector<double>>();
    if (data.size() != t.size()) throw DataError("parameter '" + name + "' has wrong size");
    std::copy(data.begin(), data.end(), t.data().begin());
  }
  std::map<std::string, std::string> aliases;
  for (const auto& [name, target] : j.at("aliases").items()) {
    aliases[name] = target.get<std::string>();
  }
  std::map<std::string, std::string> expected(ps.aliases().begin(), ps.aliases().end());
  if (aliases != expected) throw DataError("checkpoint parameter aliases do not match the model");
}

json header(const char* type, const CheckpointMeta& meta) {
  return {{"format", kFormat}, {"version", kCheckpointVersion}, {"type", type}, {"meta", meta}};
}

json parse_checked(const std::string& text, const char* type, CheckpointMeta* meta) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kFormat) {
    throw DataError("not a kgqa checkpoint");
  }
  if (j.value("version", 0) != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version " + j.value("version", json(0)).dump());
  }
  if (j.value("type", "") != type) {
    throw DataError(std::string("checkpoint holds a ") + j.value("type", "?") + " model, expected " +
                    type);
  }
  if (meta) *meta = j.value("meta", CheckpointMeta{});
  return j;
}

Vocabulary read_vocabulary(const json& j) {
  Vocabulary v;
  const auto tokens = j.at("vocabulary").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (v.add(tokens[i]) != i) throw DataError("checkpoint vocabulary is inconsistent");
  }
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint " + path.string());
  out << text << '\n';
  if (!out) throw DataError("failed writing checkpoint " + path.string());
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace

std::string checkpoint_json(const RankingModel& model, const CheckpointMeta& meta) {
  const ModelConfig& c = model.config();
  json j = header("ranking", meta);
  j["config"] = {{"kind", std::string(to_string(c.kind))},
                 {"embedding_dim", c.embedding_dim},
                 {"hidden", c.hidden},
                 {"cnn_filters", c.cnn_filters},
                 {"dam_hidden", c.dam_hidden},
                 {"share_encoders", c.share_encoders},
                 {"seed", c.seed}};
  j["vocabulary"] = model.vocabulary().tokens();
  j["units"] = model.units();
  j["parameters"] = parameters_json(model.parameters());
  return j.dump();
}

std::string checkpoint_json(const SequenceClassifier& model, const CheckpointMeta& meta) {
  const ClassifierConfig& c = model.config();
  json j = header("classifier", meta);
  j["config"] = {{"embedding_dim", c.embedding_dim}, {"hidden", c.hidden}, {"seed", c.seed}};
  j["labels"] = model.labels();
  j["trained"] = model.trained();
  j["vocabulary"] = model.vocabulary().tokens();
  j["parameters"] = parameters_json(model.parameters());
  return j.dump();
}

RankingModel ranking_from_json(const std::string& text, CheckpointMeta* meta) {
  return guarded([&] {
    const json j = parse_checked(text, "ranking", meta);
    const json& c = j.at("config");
    ModelConfig config;
    try {
      config.kind = parse_model_kind(c.at("kind").get<std::string>());
    } catch (const ArgumentError& e) {
      throw DataError(e.what());
    }
    config.embedding_dim = c.at("embedding_dim").get<std::size_t>();
    config.hidden = c.at("hidden").get<std::size_t>();
    config.cnn_filters = c.at("cnn_filters").get<std::size_t>();
    config.dam_hidden = c.at("dam_hidden").get<std::size_t>();
    config.share_encoders = c.at("share_encoders").get<bool>();
    config.seed = c.at("seed").get<std::uint64_t>();
    RankingModel model(config, read_vocabulary(j), j.at("units").get<std::vector<std::string>>());
    if (model.units() != j.at("units").get<std::vector<std::string>>()) {
      throw DataError("checkpoint unit table is inconsistent");
    }
    read_parameters(j.at("parameters"), model.parameters());
    return model;
  });
}

SequenceClassifier classifier_from_json(const std::string& text, CheckpointMeta* meta) {
  return guarded([&] {
    const json j = parse_checked(text, "classifier", meta);
    const json& c = j.at("config");
    ClassifierConfig config;
    config.embedding_dim = c.at("embedding_dim").get<std::size_t>();
    config.hidden = c.at("hidden").get<std::size_t>();
    config.seed = c.at("seed").get<std::uint64_t>();
    SequenceClassifier model(config, read_vocabulary(j),
                             j.at("labels").get<std::vector<std::string>>());
    read_parameters(j.at("parameters"), model.parameters());
    model.set_trained(j.at("trained").get<bool>());
    return model;
  });
}

void save_checkpoint(const std::filesystem::path& path, const RankingModel& model,
                     const CheckpointMeta& meta) {
  write_file(path, checkpoint_json(model, meta));
}

void save_checkpoint(const std::filesystem::path& path, const SequenceClassifier& model,
                     const CheckpointMeta& meta) {
  write_file(path, checkpoint_json(model, meta));
}

RankingModel load_ranking_model(const std::filesystem::path& path, CheckpointMeta* meta) {
  return ranking_from_json(read_file(path), meta);
}

SequenceClassifier load_classifier(const std::filesystem::path& path, CheckpointMeta* meta) {
  return classifier_from_json(read_file(path), meta);
}

}  // namespace kgqa
