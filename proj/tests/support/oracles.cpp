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


#include "oracles.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace oracle {

bool is_literal(const std::string& node) { return !node.empty() && node[0] == '"'; }

std::set<Path> enumerate_paths(const std::vector<Triple>& triples, const std::string& root,
                               const std::optional<std::string>& target, bool keep_one_hop) {
  std::set<Path> out;
  if (is_literal(root)) return out;
  for (const Triple& a : triples) {
    if (a.p == "rdf:type") continue;
    for (char d1 : {'+', '-'}) {
      const std::string& from = d1 == '+' ? a.s : a.o;
      const std::string& mid = d1 == '+' ? a.o : a.s;
      if (from != root) continue;
      if (!target || (mid == *target && keep_one_hop)) out.insert({{d1, a.p}});
      if (is_literal(mid)) continue;
      for (const Triple& b : triples) {
        if (b.p == "rdf:type") continue;
        for (char d2 : {'+', '-'}) {
          const std::string& from2 = d2 == '+' ? b.s : b.o;
          const std::string& end = d2 == '+' ? b.o : b.s;
          if (from2 != mid) continue;
          if (target && end != *target) continue;
          out.insert({{d1, a.p}, {d2, b.p}});
        }
      }
    }
  }
  return out;
}

namespace {

using Binding = std::map<std::string, std::string>;

std::string unwrap(const std::string& term) {
  if (term.size() >= 2 && term.front() == '<' && term.back() == '>') {
    return term.substr(1, term.size() - 2);
  }
  return term;
}

bool is_var(const std::string& term) { return !term.empty() && term[0] == '?'; }

bool unify(Binding& b, const std::string& term, const std::string& value) {
  if (!is_var(term)) return unwrap(term) == value;
  auto it = b.find(term);
  if (it != b.end()) return it->second == value;
  b[term] = value;
  return true;
}

}  // namespace

QueryResult evaluate_query(const std::vector<Triple>& triples, const std::string& text) {
  QueryResult result;
  const auto open = text.find("{ ");
  const auto close = text.rfind(" }");
  if (open == std::string::npos || close == std::string::npos) {
    throw std::runtime_error("oracle: no query body in " + text);
  }
  const std::string head = text.substr(0, open);
  if (head == "SELECT DISTINCT ?uri WHERE ") {
    result.kind = QueryResult::kSet;
  } else if (head == "SELECT (COUNT(DISTINCT ?uri) AS ?c) WHERE ") {
    result.kind = QueryResult::kCount;
  } else if (head == "ASK WHERE ") {
    result.kind = QueryResult::kAsk;
  } else {
    throw std::runtime_error("oracle: unknown head '" + head + "'");
  }

  std::vector<std::vector<std::string>> patterns;
  std::string body = text.substr(open + 2, close - open - 2);
  std::size_t start = 0;
  while (true) {
    const auto dot = body.find(" . ", start);
    std::istringstream in(body.substr(start, dot == std::string::npos ? std::string::npos
                                                                        : dot - start));
    std::vector<std::string> terms;
    std::string t;
    while (in >> t) terms.push_back(t);
    if (terms.size() != 3) throw std::runtime_error("oracle: bad pattern in " + text);
    patterns.push_back(terms);
    if (dot == std::string::npos) break;
    start = dot + 3;
  }

  std::vector<Binding> solutions{Binding{}};
  for (const auto& pat : patterns) {
    std::vector<Binding> next;
    for (const Binding& b : solutions) {
      for (const Triple& tr : triples) {
        if (unwrap(pat[1]) != tr.p) continue;
        Binding nb = b;
        if (unify(nb, pat[0], tr.s) && unify(nb, pat[2], tr.o)) next.push_back(nb);
      }
    }
    solutions = std::move(next);
  }

  // The variable shared by the two chain patterns is the middle node; a
  // literal there cannot continue a path.
  std::string middle;
  std::vector<const std::vector<std::string>*> chain;
  for (const auto& pat : patterns) {
    if (pat[1] != "rdf:type") chain.push_back(&pat);
  }
  if (chain.size() == 2) {
    for (const auto& a : {(*chain[0])[0], (*chain[0])[2]}) {
      if (is_var(a) && (a == (*chain[1])[0] || a == (*chain[1])[2])) middle = a;
    }
  }

  std::set<std::string> values;
  for (const Binding& b : solutions) {
    if (!middle.empty() && is_literal(b.at(middle))) continue;
    auto u = b.find("?uri");
    values.insert(u != b.end() ? u->second : std::string());
  }
  result.values = values;
  result.count = values.size();
  result.truth = !values.empty();
  return result;
}

std::vector<Triple> random_graph(std::mt19937_64& rng, std::size_t max_triples) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::size_t entities = 2 + pick(30);
  const std::size_t predicates = 1 + pick(6);
  const std::size_t classes = 1 + pick(3);
  const std::size_t n = 1 + pick(max_triples);
  std::vector<Triple> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string s = "e" + std::to_string(pick(entities));
    const std::size_t roll = pick(10);
    if (roll == 0) {
      out.push_back({s, "rdf:type", "C" + std::to_string(pick(classes))});
    } else if (roll == 1) {
      out.push_back({s, "p" + std::to_string(pick(predicates)), "\"" + std::to_string(pick(4)) + "\""});
    } else {
      out.push_back({s, "p" + std::to_string(pick(predicates)), "e" + std::to_string(pick(entities))});
    }
  }
  return out;
}

double cca(const std::vector<std::vector<std::size_t>>& rankings,
           const std::vector<std::optional<std::size_t>>& gold) {
  double hits = 0;
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    if (gold[i] && !rankings[i].empty() && rankings[i][0] == *gold[i]) hits += 1;
  }
  return hits / static_cast<double>(rankings.size());
}

double mrr(const std::vector<std::vector<std::size_t>>& rankings,
           const std::vector<std::optional<std::size_t>>& gold) {
  double total = 0;
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    if (!gold[i]) continue;
    for (std::size_t k = 0; k < rankings[i].size(); ++k) {
      if (rankings[i][k] == *gold[i]) {
        total += 1.0 / static_cast<double>(k + 1);
        break;
      }
    }
  }
  return total / static_cast<double>(rankings.size());
}

Prf set_prf(const std::set<std::string>& predicted, const std::set<std::string>& gold) {
  if (predicted.empty() && gold.empty()) return {1, 1, 1};
  if (predicted.empty() || gold.empty()) return {};
  double common = 0;
  for (const auto& p : predicted) common += gold.count(p) ? 1 : 0;
  Prf out;
  out.p = common / static_cast<double>(predicted.size());
  out.r = common / static_cast<double>(gold.size());
  out.f = common == 0 ? 0 : 2 * out.p * out.r / (out.p + out.r);
  return out;
}

}  // namespace oracle
