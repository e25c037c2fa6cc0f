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

#ifndef RISKMINE_TAXONOMY_H_
#define RISKMINE_TAXONOMY_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "riskmine/common.h"
#include "riskmine/corpus.h"

namespace riskmine {

// A keyword of a risk category. `text` is the space-joined lemma sequence;
// `source` keeps the text as written so a saved taxonomy re-normalizes to
// the same lemmas.
struct RiskTerm {
  std::string text;
  std::vector<std::string> lemmas;
  std::string source;
  Origin origin = Origin::kSeed;
  std::optional<double> similarity;  // present iff origin == kExpanded
};

struct RiskTaxonomy {
  std::map<std::string, std::vector<RiskTerm>> categories;

  std::size_t term_count() const;
};

struct Entity {
  std::string name;  // normalized
  std::vector<std::string> lemmas;
};

struct EntitySet {
  std::vector<Entity> entities;
};

// Lemma sequence of a term or entity, produced by the document pipeline.
std::vector<std::string> normalize_lemmas(std::string_view text,
                                          const Lemmatizer& lemmatizer);

RiskTerm make_term(std::string_view source, Origin origin,
                   std::optional<double> similarity,
                   const Lemmatizer& lemmatizer);

// Parses the taxonomy JSON schema
//   {"categories": {"<name>": [{"text": ..., "origin": "seed"|"expanded",
//                               "similarity": <float>}]}}
// Duplicate terms within a category are dropped with a warning; an empty
// category, a seed term carrying a similarity or an expanded term without
// one is an Error.
RiskTaxonomy parse_taxonomy(std::string_view json_text,
                            const Lemmatizer& lemmatizer,
                            Warnings* warnings = nullptr);
RiskTaxonomy load_taxonomy(const std::filesystem::path& path,
                           const Lemmatizer& lemmatizer,
                           Warnings* warnings = nullptr);

std::string taxonomy_to_json(const RiskTaxonomy& taxonomy);
void write_taxonomy(const std::filesystem::path& path,
                    const RiskTaxonomy& taxonomy);

// One entity per line; blank lines and '#' comments ignored, duplicates
// dropped with a warning. An empty list is an Error.
EntitySet load_entities(const std::filesystem::path& path,
                        const Lemmatizer& lemmatizer,
                        Warnings* warnings = nullptr);

// First-token positions of the leftmost non-overlapping matches of the lemma
// sequence in the document, ascending.
std::vector<std::size_t> find_term_locations(
    const Document& doc, std::span<const std::string> lemmas);

// Lemma -> positions index over one document. locate() returns the same
// result as find_term_locations() without scanning every token.
class LemmaIndex {
 public:
  explicit LemmaIndex(const Document& doc);

  std::vector<std::size_t> locate(std::span<const std::string> lemmas) const;

 private:
  const Document& doc_;
  std::unordered_map<std::string_view, std::vector<std::size_t>> positions_;
};

}  // namespace riskmine

#endif  // RISKMINE_TAXONOMY_H_
