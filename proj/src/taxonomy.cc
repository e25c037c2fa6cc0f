// Copyright 2026 The Riskmine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riskmine/taxonomy.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace riskmine {

namespace {

using json = nlohmann::json;

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

bool matches_at(const Document& doc, std::size_t pos,
                std::span<const std::string> lemmas) {
  if (pos + lemmas.size() > doc.tokens.size()) return false;
  for (std::size_t k = 0; k < lemmas.size(); ++k) {
    if (doc.tokens[pos + k].lemma != lemmas[k]) return false;
  }
  return true;
}

}  // namespace

std::size_t RiskTaxonomy::term_count() const {
  std::size_t n = 0;
  for (const auto& [name, terms] : categories) n += terms.size();
  return n;
}

std::vector<std::string> normalize_lemmas(std::string_view text,
                                          const Lemmatizer& lemmatizer) {
  std::vector<std::string> lemmas;
  for (const Token& t : tokenize(text)) lemmas.push_back(lemmatize(t, lemmatizer));
  return lemmas;
}

RiskTerm make_term(std::string_view source, Origin origin,
                   std::optional<double> similarity,
                   const Lemmatizer& lemmatizer) {
  RiskTerm term;
  term.source = std::string(source);
  term.lemmas = normalize_lemmas(source, lemmatizer);
  term.text = join(term.lemmas);
  term.origin = origin;
  term.similarity = similarity;
  return term;
}

RiskTaxonomy parse_taxonomy(std::string_view json_text,
                            const Lemmatizer& lemmatizer,
                            Warnings* warnings) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object() ||
      !root.contains("categories") || !root["categories"].is_object()) {
    throw Error("taxonomy: expected an object with a \"categories\" object");
  }
  RiskTaxonomy taxonomy;
  for (const auto& [name, entries] : root["categories"].items()) {
    if (!entries.is_array() || entries.empty()) {
      throw Error("taxonomy: category '" + name + "' is empty");
    }
    std::vector<RiskTerm> terms;
    std::set<std::string> seen;
    for (const auto& entry : entries) {
      if (!entry.is_object() || !entry.contains("text") ||
          !entry["text"].is_string()) {
        throw Error("taxonomy: category '" + name +
                    "' has a term without a \"text\" string");
      }
      const std::string source = entry["text"].get<std::string>();
      Origin origin = Origin::kSeed;
      if (entry.contains("origin")) {
        if (!entry["origin"].is_string()) {
          throw Error("taxonomy: origin of '" + source + "' is not a string");
        }
        origin = parse_origin(entry["origin"].get<std::string>());
      }
      std::optional<double> similarity;
      if (entry.contains("similarity") && !entry["similarity"].is_null()) {
        if (!entry["similarity"].is_number()) {
          throw Error("taxonomy: similarity of '" + source + "' is not a number");
        }
        similarity = entry["similarity"].get<double>();
        if (*similarity < -1.0 || *similarity > 1.0) {
          throw Error("taxonomy: similarity of '" + source +
                      "' is outside [-1, 1]");
        }
      }
      if (origin == Origin::kSeed && similarity) {
        throw Error("taxonomy: seed term '" + source + "' carries a similarity");
      }
      if (origin == Origin::kExpanded && !similarity) {
        throw Error("taxonomy: expanded term '" + source +
                    "' has no similarity");
      }
      RiskTerm term = make_term(source, origin, similarity, lemmatizer);
      if (term.text.empty()) {
        throw Error("taxonomy: category '" + name + "' has an empty term");
      }
      if (!seen.insert(term.text).second) {
        warn(warnings, "taxonomy: duplicate term '" + term.text +
                           "' in category '" + name + "' dropped");
        continue;
      }
      terms.push_back(std::move(term));
    }
    taxonomy.categories.emplace(name, std::move(terms));
  }
  if (taxonomy.categories.empty()) throw Error("taxonomy: no categories");
  return taxonomy;
}

RiskTaxonomy load_taxonomy(const std::filesystem::path& path,
                           const Lemmatizer& lemmatizer, Warnings* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read taxonomy " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_taxonomy(buf.str(), lemmatizer, warnings);
}

std::string taxonomy_to_json(const RiskTaxonomy& taxonomy) {
  nlohmann::ordered_json categories = nlohmann::ordered_json::object();
  for (const auto& [name, terms] : taxonomy.categories) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const RiskTerm& t : terms) {
      nlohmann::ordered_json entry;
      entry["text"] = t.source.empty() ? t.text : t.source;
      entry["origin"] = origin_name(t.origin);
      if (t.similarity) entry["similarity"] = *t.similarity;
      list.push_back(std::move(entry));
    }
    categories[name] = std::move(list);
  }
  nlohmann::ordered_json root;
  root["categories"] = std::move(categories);
  return root.dump(2) + "\n";
}

void write_taxonomy(const std::filesystem::path& path,
                    const RiskTaxonomy& taxonomy) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << taxonomy_to_json(taxonomy);
}

EntitySet load_entities(const std::filesystem::path& path,
                        const Lemmatizer& lemmatizer, Warnings* warnings) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read entity list " + path.string());
  EntitySet set;
  std::set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    Entity e;
    e.lemmas = normalize_lemmas(line, lemmatizer);
    e.name = join(e.lemmas);
    if (!seen.insert(e.name).second) {
      warn(warnings, "entities: duplicate entity '" + e.name + "' dropped");
      continue;
    }
    set.entities.push_back(std::move(e));
  }
  if (set.entities.empty()) {
    throw Error("entity list " + path.string() + " is empty");
  }
  return set;
}

std::vector<std::size_t> find_term_locations(
    const Document& doc, std::span<const std::string> lemmas) {
  std::vector<std::size_t> locs;
  if (lemmas.empty()) return locs;
  std::size_t pos = 0;
  while (pos < doc.tokens.size()) {
    if (matches_at(doc, pos, lemmas)) {
      locs.push_back(pos);
      pos += lemmas.size();
    } else {
      ++pos;
    }
  }
  return locs;
}

LemmaIndex::LemmaIndex(const Document& doc) : doc_(doc) {
  for (const Token& t : doc.tokens) positions_[t.lemma].push_back(t.index);
}

std::vector<std::size_t> LemmaIndex::locate(
    std::span<const std::string> lemmas) const {
  std::vector<std::size_t> locs;
  if (lemmas.empty()) return locs;
  auto it = positions_.find(lemmas.front());
  if (it == positions_.end()) return locs;
  std::size_t next_free = 0;
  for (std::size_t pos : it->second) {
    if (pos < next_free) continue;
    if (matches_at(doc_, pos, lemmas)) {
      locs.push_back(pos);
      next_free = pos + lemmas.size();
    }
  }
  return locs;
}

}  // namespace riskmine
