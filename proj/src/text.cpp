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

#include "kgqa/text.hpp"

#include <fstream>
#include <sstream>

#include "kgqa/errors.hpp"

namespace kgqa {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

char lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = lower(c);
  return out;
}

}  // namespace

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::string current;
  for (char c : text) {
    if (is_word_byte(static_cast<unsigned char>(c))) {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string_view local_name(std::string_view iri) {
  const auto pos = iri.find_last_of("/#:");
  if (pos == std::string_view::npos) return iri;
  return iri.substr(pos + 1);
}

Tokens surface_form(std::string_view iri) {
  std::string_view name = local_name(iri);
  if (name.empty()) return {lowercase(iri)};

  Tokens out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(lowercase(current));
    current.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (c == '_') {
      flush();
      continue;
    }
    if (is_upper(c) && !current.empty()) {
      const bool after_lower = is_lower(current.back());
      // "XMLFile" splits as "xml" + "file".
      const bool acronym_end =
          is_upper(current.back()) && i + 1 < name.size() && is_lower(name[i + 1]);
      if (after_lower || acronym_end) flush();
    }
    current.push_back(c);
  }
  flush();
  if (out.empty()) return {lowercase(iri)};
  return out;
}

std::string join(const Tokens& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

SurfaceForms SurfaceForms::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open surface-form file " + path.string());
  return parse(in, path.string());
}

SurfaceForms SurfaceForms::parse(std::istream& in, const std::string& source) {
  SurfaceForms forms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(source, line_no, "expected `iri<TAB>tokens`");
    }
    std::istringstream words(line.substr(tab + 1));
    Tokens tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) throw ParseError(source, line_no, "empty surface form");
    forms.set(line.substr(0, tab), std::move(tokens));
  }
  return forms;
}

void SurfaceForms::set(std::string iri, Tokens tokens) {
  overrides_[std::move(iri)] = std::move(tokens);
}

Tokens SurfaceForms::lookup(std::string_view iri) const {
  if (auto it = overrides_.find(std::string(iri)); it != overrides_.end()) return it->second;
  return surface_form(iri);
}

}  // namespace kgqa
