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

#ifndef RISKMINE_MATCHER_H_
#define RISKMINE_MATCHER_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "riskmine/corpus.h"
#include "riskmine/taxonomy.h"

namespace riskmine {

inline constexpr std::size_t kDefaultCutoff = 100;

struct Match {
  std::string doc_id;
  std::string category;
  RiskTerm keyword;
  std::string entity;
  std::size_t keyword_loc = 0;
  std::size_t entity_loc = 0;
  std::size_t distance = 0;
};

struct Extract {
  Match match;
  std::size_t sentence_start = 0;
  std::size_t sentence_end = 0;
  std::string text;
  std::size_t word_count = 0;
  Origin origin = Origin::kSeed;

  bool multi_sentence() const { return sentence_end > sentence_start; }
  // "<doc_id>:<keyword_loc>:<entity_loc>"; unique within a deduped pool
  // because the anchors determine the span.
  std::string id() const;
};

// Nearest-entity pairing. For every keyword instance (category, term,
// location) and every entity with at least one instance, the nearest entity
// instance is found, preferring the preceding one at equal distance. Of
// those candidates only the closest entity is kept (ties broken by entity
// name), and it is dropped if its distance exceeds the cutoff. Distances are
// token-index differences between anchor tokens. Output is ordered by
// (keyword_loc, category, keyword text).
std::vector<Match> pair_entities_keywords(const Document& doc,
                                          const RiskTaxonomy& taxonomy,
                                          const EntitySet& entities,
                                          std::size_t cutoff);

// Extract covering the sentences from the one holding the earlier anchor to
// the one holding the later anchor. Text is the raw slice with whitespace
// runs collapsed to one space.
Extract retrieve_span(const Document& doc, const Match& match);

// Keeps one extract per distinct text: the one with the smallest
// (distance, doc_id, keyword_loc). Survivors stay in input order.
std::vector<Extract> dedupe(const std::vector<Extract>& extracts);

struct ComplexityEstimate {
  std::size_t i = 0;  // keyword terms across categories
  double a = 0.0;     // mean instances of one keyword per document
  std::size_t j = 0;  // entities
  double b = 0.0;     // mean instances of one entity per document
  double predicted_comparisons = 0.0;

  static ComplexityEstimate make(std::size_t i, double a, std::size_t j,
                                 double b);
};

ComplexityEstimate estimate_complexity(const RiskTaxonomy& taxonomy,
                                       const EntitySet& entities,
                                       const std::vector<Document>& docs);

struct ExtractStats {
  std::size_t count = 0;
  double multi_sentence_fraction = 0.0;
  double mean_distance = 0.0;
  double distance_stddev = 0.0;  // population
};

// Throws Error on an empty list.
ExtractStats extract_stats(const std::vector<Extract>& extracts);

// Extract dump line: doc_id, category, keyword, entity, keyword_loc,
// entity_loc, distance, sentence_start, sentence_end, origin, text, plus
// word_count and the keyword similarity when present.
std::string extract_to_json(const Extract& extract);
Extract extract_from_json(std::string_view line);

void write_extracts(const std::filesystem::path& path,
                    const std::vector<Extract>& extracts);
std::vector<Extract> read_extracts(const std::filesystem::path& path);

}  // namespace riskmine

#endif  // RISKMINE_MATCHER_H_
