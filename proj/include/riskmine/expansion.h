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

#ifndef RISKMINE_EXPANSION_H_
#define RISKMINE_EXPANSION_H_

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
#include "riskmine/taxonomy.h"

namespace riskmine {

inline constexpr std::size_t kDefaultExpansionK = 10;
inline constexpr double kDefaultMinSimilarity = 0.5;

// Word vectors read from the plain-text format: a `<vocab_size> <dim>`
// header followed by `<word> <f1> ... <f_dim>` lines. Rows are kept in file
// order.
class WordVectors {
 public:
  WordVectors(std::size_t dim) : dim_(dim) {}

  static WordVectors load(const std::filesystem::path& path);
  static WordVectors parse(std::string_view text,
                           std::string_view source_name = "<memory>");

  // Throws Error for a duplicate word, a wrong length or a zero vector.
  void add(std::string word, std::vector<double> values);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  const std::string& word(std::size_t row) const { return words_[row]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * dim_, dim_};
  }
  std::optional<std::span<const double>> find(std::string_view word) const;

 private:
  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> rows_;
};

// Cosine of the angle between two vectors, clamped to [-1, 1]. Throws Error
// on a dimension mismatch or a zero vector.
double similarity(std::span<const double> r, std::span<const double> w);

// Single word: its vector. Multi-word: mean of the component vectors found
// in the vocabulary. Empty when no component is known.
std::optional<std::vector<double>> term_vector(std::string_view term,
                                               const WordVectors& vectors);

struct Candidate {
  std::string term;  // vocabulary word as stored
  double similarity = 0.0;
};

struct ExpansionResult {
  std::string category;
  std::string seed_term;
  // Similarity descending, vocabulary word ascending on ties.
  std::vector<Candidate> candidates;
};

struct ExpansionOptions {
  std::size_t k = kDefaultExpansionK;
  double min_similarity = kDefaultMinSimilarity;
  unsigned threads = 1;
};

struct ReportEntry {
  std::string term;
  double similarity = 0.0;
  std::string nearest_seed;
};

struct ExpansionOutcome {
  RiskTaxonomy taxonomy;
  std::vector<ExpansionResult> per_seed;
  // Category -> added terms, similarity descending then term ascending.
  std::map<std::string, std::vector<ReportEntry>> report;
};

// Top-k vocabulary words for one seed term. A word is excluded when it is
// one of the seed's own words, when its normalized form is empty or equals a
// word of the seed, or when it normalizes to a term already in `existing`.
// Only words scoring at least min_similarity are kept.
ExpansionResult rank_candidates(const std::string& category,
                                const RiskTerm& seed,
                                const std::vector<RiskTerm>& existing,
                                const WordVectors& vectors,
                                const ExpansionOptions& options,
                                const Lemmatizer& lemmatizer);

// Expands every seed term of every category and appends the merged
// candidates (one per normalized text, maximum similarity) as expanded
// terms, sorted by text. Seed terms without a vector are skipped with a
// warning. Throws Error when k == 0.
ExpansionOutcome expand_taxonomy(const RiskTaxonomy& taxonomy,
                                 const WordVectors& vectors,
                                 const ExpansionOptions& options,
                                 const Lemmatizer& lemmatizer,
                                 Warnings* warnings = nullptr);

std::string expansion_report_json(const ExpansionOutcome& outcome);

// Word -> WordNet-style sense count, every count >= 1.
class SenseLexicon {
 public:
  SenseLexicon() = default;
  explicit SenseLexicon(std::unordered_map<std::string, int> counts);

  // TSV `word<TAB>count`, '#' comments allowed.
  static SenseLexicon load(const std::filesystem::path& path);

  // Lookup is case-insensitive; unknown words count as one sense.
  int senses(std::string_view word) const;

 private:
  std::unordered_map<std::string, int> counts_;
};

// Mean sense count over every word of every term. Throws Error when there
// are no words.
double polysemy_average(const std::vector<std::string>& terms,
                        const SenseLexicon& lexicon);

// (expanded - seed) / seed * 100.
double percentage_increase(double seed_average, double expanded_average);

struct PolysemyComparison {
  double seed = 0.0;
  double expanded = 0.0;
  double increase_pct = 0.0;
};

// Per category, for categories holding both seed and expanded terms.
std::map<std::string, PolysemyComparison> compare_polysemy(
    const RiskTaxonomy& taxonomy, const SenseLexicon& lexicon);

}  // namespace riskmine

#endif  // RISKMINE_EXPANSION_H_
