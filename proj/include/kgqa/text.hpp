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

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgqa {

using Tokens = std::vector<std::string>;

// Lowercased runs of letters and digits. Bytes >= 0x80 are kept as part of
// a word so UTF-8 text survives.
Tokens tokenize(std::string_view text);

// Local name of an IRI: the part after the last '/', '#' or ':'.
std::string_view local_name(std::string_view iri);

// Default lexicalization of an IRI: local name split on camel-case
// boundaries and underscores, lowercased.
Tokens surface_form(std::string_view iri);

std::string join(const Tokens& tokens, std::string_view sep = " ");

// Surface forms with optional per-IRI overrides.
class SurfaceForms {
 public:
  SurfaceForms() = default;

  // TSV: `iri<TAB>space-separated tokens`; '#' lines are comments.
  static SurfaceForms load(const std::filesystem::path& path);
  static SurfaceForms parse(std::istream& in, const std::string& source);

  void set(std::string iri, Tokens tokens);
  Tokens lookup(std::string_view iri) const;
  std::size_t override_count() const { return overrides_.size(); }

 private:
  std::unordered_map<std::string, Tokens> overrides_;
};

}  // namespace kgqa
