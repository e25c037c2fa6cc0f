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

#include "riskmine/matcher.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>

#include "json.hpp"

namespace riskmine {

namespace {

using json = nlohmann::json;

struct Nearest {
  std::size_t loc = 0;
  std::size_t distance = 0;
};

// Nearest location in a sorted, non-empty list; the preceding one wins ties.
Nearest find_closest(std::size_t target, const std::vector<std::size_t>& locs) {
  auto it = std::lower_bound(locs.begin(), locs.end(), target);
  Nearest best{0, std::numeric_limits<std::size_t>::max()};
  if (it != locs.begin()) {
    const std::size_t before = *std::prev(it);
    best = {before, target - before};
  }
  if (it != locs.end() && *it - target < best.distance) {
    best = {*it, *it - target};
  }
  return best;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string Extract::id() const {
  return match.doc_id + ":" + std::to_string(match.keyword_loc) + ":" +
         std::to_string(match.entity_loc);
}

std::vector<Match> pair_entities_keywords(const Document& doc,
                                          const RiskTaxonomy& taxonomy,
                                          const EntitySet& entities,
                                          std::size_t cutoff) {
  std::vector<Match> matches;
  const LemmaIndex index(doc);

  struct Located {
    const Entity* entity;
    std::vector<std::size_t> locs;
  };
  std::vector<Located> present;
  for (const Entity& e : entities.entities) {
    auto locs = index.locate(e.lemmas);
    if (!locs.empty()) present.push_back({&e, std::move(locs)});
  }
  if (present.empty()) return matches;

  for (const auto& [category, terms] : taxonomy.categories) {
    for (const RiskTerm& term : terms) {
      for (std::size_t kloc : index.locate(term.lemmas)) {
        const Entity* best_entity = nullptr;
        Nearest best{0, std::numeric_limits<std::size_t>::max()};
        for (const Located& cand : present) {
          const Nearest hit = find_closest(kloc, cand.locs);
          if (hit.distance < best.distance ||
              (hit.distance == best.distance &&
               cand.entity->name < best_entity->name)) {
            best = hit;
            best_entity = cand.entity;
          }
        }
        if (best.distance > cutoff) continue;
        Match m;
        m.doc_id = doc.id;
        m.category = category;
        m.keyword = term;
        m.entity = best_entity->name;
        m.keyword_loc = kloc;
        m.entity_loc = best.loc;
        m.distance = best.distance;
        matches.push_back(std::move(m));
      }
    }
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const Match& x, const Match& y) {
                     return std::tie(x.keyword_loc, x.category, x.keyword.text) <
                            std::tie(y.keyword_loc, y.category, y.keyword.text);
                   });
  return matches;
}

Extract retrieve_span(const Document& doc, const Match& match) {
  const std::size_t lo = std::min(match.keyword_loc, match.entity_loc);
  const std::size_t hi = std::max(match.keyword_loc, match.entity_loc);
  if (hi >= doc.tokens.size()) {
    throw Error("match anchors outside document " + doc.id);
  }
  Extract ex;
  ex.match = match;
  ex.origin = match.keyword.origin;
  ex.sentence_start = doc.tokens[lo].sentence_index;
  ex.sentence_end = doc.tokens[hi].sentence_index;
  const std::size_t first = doc.sentences[ex.sentence_start].token_start;
  const std::size_t last = doc.sentences[ex.sentence_end].token_end;
  const std::size_t begin = doc.tokens[first].char_start;
  const std::size_t end = doc.tokens[last].char_end;
  ex.text = collapse_whitespace(std::string_view(doc.raw).substr(begin, end - begin));
  for (std::size_t t = first; t <= last; ++t) {
    if (!is_punctuation(doc.tokens[t].surface)) ++ex.word_count;
  }
  return ex;
}

std::vector<Extract> dedupe(const std::vector<Extract>& extracts) {
  auto better = [](const Extract& x, const Extract& y) {
    return std::tie(x.match.distance, x.match.doc_id, x.match.keyword_loc) <
           std::tie(y.match.distance, y.match.doc_id, y.match.keyword_loc);
  };
  std::unordered_map<std::string_view, std::size_t> winner;
  for (std::size_t i = 0; i < extracts.size(); ++i) {
    auto [it, inserted] = winner.try_emplace(extracts[i].text, i);
    if (!inserted && better(extracts[i], extracts[it->second])) it->second = i;
  }
  std::vector<Extract> out;
  out.reserve(winner.size());
  for (std::size_t i = 0; i < extracts.size(); ++i) {
    if (winner.at(extracts[i].text) == i) out.push_back(extracts[i]);
  }
  return out;
}

ComplexityEstimate ComplexityEstimate::make(std::size_t i, double a,
                                            std::size_t j, double b) {
  ComplexityEstimate c;
  c.i = i;
  c.a = a;
  c.j = j;
  c.b = b;
  c.predicted_comparisons = (static_cast<double>(i) * a) *
                            (static_cast<double>(j) * b);
  return c;
}

ComplexityEstimate estimate_complexity(const RiskTaxonomy& taxonomy,
                                       const EntitySet& entities,
                                       const std::vector<Document>& docs) {
  const std::size_t i = taxonomy.term_count();
  const std::size_t j = entities.entities.size();
  double keyword_instances = 0.0;
  double entity_instances = 0.0;
  for (const Document& doc : docs) {
    const LemmaIndex index(doc);
    for (const auto& [name, terms] : taxonomy.categories) {
      for (const RiskTerm& t : terms) {
        keyword_instances += static_cast<double>(index.locate(t.lemmas).size());
      }
    }
    for (const Entity& e : entities.entities) {
      entity_instances += static_cast<double>(index.locate(e.lemmas).size());
    }
  }
  const double n = static_cast<double>(docs.size());
  const double a = (i == 0 || docs.empty()) ? 0.0 : keyword_instances / (n * i);
  const double b = (j == 0 || docs.empty()) ? 0.0 : entity_instances / (n * j);
  return ComplexityEstimate::make(i, a, j, b);
}

ExtractStats extract_stats(const std::vector<Extract>& extracts) {
  if (extracts.empty()) throw Error("extract statistics need at least one extract");
  ExtractStats s;
  s.count = extracts.size();
  double multi = 0.0;
  double sum = 0.0;
  for (const Extract& e : extracts) {
    if (e.multi_sentence()) multi += 1.0;
    sum += static_cast<double>(e.match.distance);
  }
  const double n = static_cast<double>(extracts.size());
  s.multi_sentence_fraction = multi / n;
  s.mean_distance = sum / n;
  double sq = 0.0;
  for (const Extract& e : extracts) {
    const double d = static_cast<double>(e.match.distance) - s.mean_distance;
    sq += d * d;
  }
  s.distance_stddev = std::sqrt(sq / n);
  return s;
}

std::string extract_to_json(const Extract& extract) {
  const Match& m = extract.match;
  nlohmann::ordered_json j;
  j["doc_id"] = m.doc_id;
  j["category"] = m.category;
  j["keyword"] = m.keyword.text;
  j["entity"] = m.entity;
  j["keyword_loc"] = m.keyword_loc;
  j["entity_loc"] = m.entity_loc;
  j["distance"] = m.distance;
  j["sentence_start"] = extract.sentence_start;
  j["sentence_end"] = extract.sentence_end;
  j["origin"] = origin_name(extract.origin);
  j["text"] = extract.text;
  j["word_count"] = extract.word_count;
  if (m.keyword.similarity) j["similarity"] = *m.keyword.similarity;
  return j.dump();
}

Extract extract_from_json(std::string_view line) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw Error("extract: invalid JSON");
  try {
    Extract e;
    Match& m = e.match;
    m.doc_id = j.at("doc_id").get<std::string>();
    m.category = j.at("category").get<std::string>();
    m.keyword.text = j.at("keyword").get<std::string>();
    m.keyword.source = m.keyword.text;
    for (std::size_t pos = 0; pos <= m.keyword.text.size();) {
      const auto space = std::min(m.keyword.text.find(' ', pos), m.keyword.text.size());
      m.keyword.lemmas.push_back(m.keyword.text.substr(pos, space - pos));
      pos = space + 1;
    }
    m.entity = j.at("entity").get<std::string>();
    m.keyword_loc = j.at("keyword_loc").get<std::size_t>();
    m.entity_loc = j.at("entity_loc").get<std::size_t>();
    m.distance = j.at("distance").get<std::size_t>();
    e.sentence_start = j.at("sentence_start").get<std::size_t>();
    e.sentence_end = j.at("sentence_end").get<std::size_t>();
    e.origin = parse_origin(j.at("origin").get<std::string>());
    m.keyword.origin = e.origin;
    if (j.contains("similarity")) m.keyword.similarity = j["similarity"].get<double>();
    e.text = j.at("text").get<std::string>();
    e.word_count = j.contains("word_count") ? j["word_count"].get<std::size_t>()
                                            : count_words(e.text);
    if (m.distance != (m.keyword_loc > m.entity_loc ? m.keyword_loc - m.entity_loc
                                                    : m.entity_loc - m.keyword_loc)) {
      throw Error("distance does not match anchors");
    }
    return e;
  } catch (const json::exception& ex) {
    throw Error(std::string("extract: ") + ex.what());
  }
}

void write_extracts(const std::filesystem::path& path,
                    const std::vector<Extract>& extracts) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (const Extract& e : extracts) out << extract_to_json(e) << '\n';
}

std::vector<Extract> read_extracts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read extracts " + path.string());
  std::vector<Extract> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(extract_from_json(line));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace riskmine
