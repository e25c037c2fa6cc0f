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

#include "riskmine/expansion.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace riskmine {

namespace {

std::vector<std::string_view> split_spaces(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    const std::size_t begin = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
    if (pos > begin) out.push_back(text.substr(begin, pos - begin));
  }
  return out;
}

double parse_double(std::string_view field, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw Error(where + ": invalid number '" + std::string(field) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view field, const std::string& where) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(where + ": invalid integer '" + std::string(field) + "'");
  }
  return v;
}

// Normalized text for every vocabulary row.
std::vector<std::string> normalize_vocabulary(const WordVectors& vectors,
                                              const Lemmatizer& lemmatizer) {
  std::vector<std::string> norms(vectors.size());
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    norms[r] = make_term(vectors.word(r), Origin::kExpanded, 0.0, lemmatizer).text;
  }
  return norms;
}

ExpansionResult rank_with_norms(const std::string& category,
                                const RiskTerm& seed,
                                const std::vector<RiskTerm>& existing,
                                const WordVectors& vectors,
                                const ExpansionOptions& options,
                                const std::vector<std::string>& norms,
                                const std::vector<double>& seed_vector) {
  std::unordered_set<std::string> seed_words;
  for (auto w : split_spaces(seed.source.empty() ? seed.text : seed.source)) {
    seed_words.insert(ascii_lower(w));
  }
  std::unordered_set<std::string> seed_lemmas(seed.lemmas.begin(), seed.lemmas.end());
  std::unordered_set<std::string> existing_texts;
  for (const RiskTerm& t : existing) existing_texts.insert(t.text);

  std::vector<Candidate> scored;
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    const std::string& word = vectors.word(r);
    if (seed_words.count(ascii_lower(word)) > 0) continue;
    const std::string& norm = norms[r];
    if (norm.empty() || seed_lemmas.count(norm) > 0 ||
        existing_texts.count(norm) > 0) {
      continue;
    }
    const double sim = similarity(seed_vector, vectors.row(r));
    if (sim < options.min_similarity) continue;
    scored.push_back({word, sim});
  }
  auto order = [](const Candidate& x, const Candidate& y) {
    if (x.similarity != y.similarity) return x.similarity > y.similarity;
    return x.term < y.term;
  };
  const std::size_t keep = std::min(options.k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(), order);
  scored.resize(keep);

  ExpansionResult result;
  result.category = category;
  result.seed_term = seed.text;
  result.candidates = std::move(scored);
  return result;
}

}  // namespace

WordVectors WordVectors::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read vectors " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

WordVectors WordVectors::parse(std::string_view text,
                               std::string_view source_name) {
  const std::string name(source_name);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw Error(name + ": empty vector file");
  auto header = split_spaces(line);
  const std::string header_where = name + ":1";
  if (header.size() != 2) {
    throw Error(header_where + ": expected header '<vocab_size> <dim>'");
  }
  const std::size_t vocab_size = parse_count(header[0], header_where);
  const std::size_t dim = parse_count(header[1], header_where);
  if (dim == 0) throw Error(header_where + ": dimension must be positive");

  WordVectors vectors(dim);
  while (next_line(line)) {
    const std::string where = name + ":" + std::to_string(line_no);
    auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw Error(where + ": expected " + std::to_string(dim) +
                  " values, found " + std::to_string(fields.size() - 1));
    }
    std::vector<double> values(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      values[d] = parse_double(fields[d + 1], where);
    }
    try {
      vectors.add(std::string(fields[0]), std::move(values));
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
  }
  if (vectors.size() != vocab_size) {
    throw Error(name + ": header declares " + std::to_string(vocab_size) +
                " words, found " + std::to_string(vectors.size()));
  }
  return vectors;
}

void WordVectors::add(std::string word, std::vector<double> values) {
  if (values.size() != dim_) {
    throw Error("vector for '" + word + "' has " + std::to_string(values.size()) +
                " values, expected " + std::to_string(dim_));
  }
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
    throw Error("zero vector for '" + word + "'");
  }
  if (!rows_.emplace(word, words_.size()).second) {
    throw Error("duplicate word '" + word + "'");
  }
  words_.push_back(std::move(word));
  values_.insert(values_.end(), values.begin(), values.end());
}

std::optional<std::span<const double>> WordVectors::find(
    std::string_view word) const {
  auto it = rows_.find(std::string(word));
  if (it == rows_.end()) return std::nullopt;
  return row(it->second);
}

double similarity(std::span<const double> r, std::span<const double> w) {
  if (r.size() != w.size()) throw Error("similarity: dimension mismatch");
  double dot = 0.0, rr = 0.0, ww = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    dot += r[i] * w[i];
    rr += r[i] * r[i];
    ww += w[i] * w[i];
  }
  if (rr == 0.0 || ww == 0.0) throw Error("similarity: zero vector");
  return std::clamp(dot / (std::sqrt(rr) * std::sqrt(ww)), -1.0, 1.0);
}

std::optional<std::vector<double>> term_vector(std::string_view term,
                                               const WordVectors& vectors) {
  std::vector<double> sum(vectors.dim(), 0.0);
  std::size_t found = 0;
  for (auto word : split_spaces(term)) {
    auto v = vectors.find(word);
    if (!v) continue;
    for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += (*v)[d];
    ++found;
  }
  if (found == 0) return std::nullopt;
  for (double& x : sum) x /= static_cast<double>(found);
  return sum;
}

ExpansionResult rank_candidates(const std::string& category,
                                const RiskTerm& seed,
                                const std::vector<RiskTerm>& existing,
                                const WordVectors& vectors,
                                const ExpansionOptions& options,
                                const Lemmatizer& lemmatizer) {
  if (options.k == 0) throw Error("expansion: k must be at least 1");
  auto seed_vector = term_vector(seed.source.empty() ? seed.text : seed.source,
                                 vectors);
  if (!seed_vector) seed_vector = term_vector(seed.text, vectors);
  if (!seed_vector) {
    ExpansionResult empty;
    empty.category = category;
    empty.seed_term = seed.text;
    return empty;
  }
  return rank_with_norms(category, seed, existing, vectors, options,
                         normalize_vocabulary(vectors, lemmatizer), *seed_vector);
}

ExpansionOutcome expand_taxonomy(const RiskTaxonomy& taxonomy,
                                 const WordVectors& vectors,
                                 const ExpansionOptions& options,
                                 const Lemmatizer& lemmatizer,
                                 Warnings* warnings) {
  if (options.k == 0) throw Error("expansion: k must be at least 1");
  const std::vector<std::string> norms = normalize_vocabulary(vectors, lemmatizer);

  struct Job {
    const std::string* category;
    const RiskTerm* seed;
    const std::vector<RiskTerm>* existing;
    std::vector<double> vector;
  };
  std::vector<Job> jobs;
  for (const auto& [category, terms] : taxonomy.categories) {
    for (const RiskTerm& term : terms) {
      if (term.origin != Origin::kSeed) continue;
      // Vocabulary words are surface forms, so try the term as written first.
      auto v = term_vector(term.source.empty() ? term.text : term.source, vectors);
      if (!v) v = term_vector(term.text, vectors);
      if (!v) {
        warn(warnings, "expansion: no vector for seed term '" + term.text +
                           "' in category '" + category + "', skipped");
        continue;
      }
      jobs.push_back({&category, &term, &terms, std::move(*v)});
    }
  }

  ExpansionOutcome outcome;
  outcome.per_seed.resize(jobs.size());
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    outcome.per_seed[i] = rank_with_norms(*job.category, *job.seed, *job.existing,
                                          vectors, options, norms, job.vector);
  });

  outcome.taxonomy = taxonomy;
  struct Merged {
    RiskTerm term;
    std::string nearest_seed;
  };
  std::map<std::string, std::map<std::string, Merged>> merged;
  for (const ExpansionResult& result : outcome.per_seed) {
    auto& bucket = merged[result.category];
    for (const Candidate& c : result.candidates) {
      RiskTerm term = make_term(c.term, Origin::kExpanded, c.similarity, lemmatizer);
      auto it = bucket.find(term.text);
      if (it == bucket.end()) {
        const std::string key = term.text;
        bucket.emplace(key, Merged{std::move(term), result.seed_term});
      } else if (c.similarity > *it->second.term.similarity) {
        it->second = Merged{std::move(term), result.seed_term};
      }
    }
  }
  for (auto& [category, bucket] : merged) {
    auto& terms = outcome.taxonomy.categories[category];
    auto& report = outcome.report[category];
    for (auto& [text, m] : bucket) {
      report.push_back({m.term.text, *m.term.similarity, m.nearest_seed});
      terms.push_back(std::move(m.term));
    }
    std::sort(report.begin(), report.end(),
              [](const ReportEntry& x, const ReportEntry& y) {
                if (x.similarity != y.similarity) return x.similarity > y.similarity;
                return x.term < y.term;
              });
  }
  return outcome;
}

std::string expansion_report_json(const ExpansionOutcome& outcome) {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  for (const auto& [category, entries] : outcome.report) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const ReportEntry& e : entries) {
      nlohmann::ordered_json item;
      item["term"] = e.term;
      item["similarity"] = e.similarity;
      item["nearest_seed"] = e.nearest_seed;
      list.push_back(std::move(item));
    }
    root[category] = std::move(list);
  }
  return root.dump(2) + "\n";
}

SenseLexicon::SenseLexicon(std::unordered_map<std::string, int> counts) {
  for (auto& [word, count] : counts) {
    if (count < 1) throw Error("sense count for '" + word + "' must be >= 1");
    counts_.emplace(ascii_lower(word), count);
  }
}

SenseLexicon SenseLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read sense lexicon " + path.string());
  std::unordered_map<std::string, int> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(where + ": expected word<TAB>count");
    }
    const std::size_t count = parse_count(std::string_view(line).substr(tab + 1), where);
    if (count < 1) throw Error(where + ": sense count must be >= 1");
    counts[line.substr(0, tab)] = static_cast<int>(count);
  }
  return SenseLexicon(std::move(counts));
}

int SenseLexicon::senses(std::string_view word) const {
  auto it = counts_.find(ascii_lower(word));
  return it == counts_.end() ? 1 : it->second;
}

double polysemy_average(const std::vector<std::string>& terms,
                        const SenseLexicon& lexicon) {
  double total = 0.0;
  std::size_t words = 0;
  for (const std::string& term : terms) {
    for (auto word : split_spaces(term)) {
      total += lexicon.senses(word);
      ++words;
    }
  }
  if (words == 0) throw Error("polysemy average of an empty term list");
  return total / static_cast<double>(words);
}

double percentage_increase(double seed_average, double expanded_average) {
  if (seed_average == 0.0) throw Error("percentage increase from zero");
  return (expanded_average - seed_average) / seed_average * 100.0;
}

std::map<std::string, PolysemyComparison> compare_polysemy(
    const RiskTaxonomy& taxonomy, const SenseLexicon& lexicon) {
  std::map<std::string, PolysemyComparison> out;
  for (const auto& [category, terms] : taxonomy.categories) {
    std::vector<std::string> seed, expanded;
    for (const RiskTerm& t : terms) {
      const std::string& words = t.source.empty() ? t.text : t.source;
      (t.origin == Origin::kSeed ? seed : expanded).push_back(words);
    }
    if (seed.empty() || expanded.empty()) continue;
    PolysemyComparison c;
    c.seed = polysemy_average(seed, lexicon);
    c.expanded = polysemy_average(expanded, lexicon);
    c.increase_pct = percentage_increase(c.seed, c.expanded);
    out.emplace(category, c);
  }
  return out;
}

}  // namespace riskmine
