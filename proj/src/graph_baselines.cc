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

#include "riskmine/graph_baselines.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "json.hpp"

namespace riskmine {

namespace {

ExtractGraph empty_graph(const std::vector<Extract>& extracts) {
  ExtractGraph g;
  g.nodes = extracts;
  g.weights.assign(extracts.size() * extracts.size(), 0.0);
  return g;
}

void set_edge(ExtractGraph& g, std::size_t i, std::size_t j, double w) {
  const std::size_t n = g.nodes.size();
  g.weights[i * n + j] = w;
  g.weights[j * n + i] = w;
}

// Scores quantized to 1e-12 so near-equal floating values compare equal.
long long score_key(double score) {
  return static_cast<long long>(std::llround(score * 1e12));
}

}  // namespace

ExtractGraph textrank_weights(const std::vector<Extract>& extracts,
                              const Lemmatizer& lemmatizer) {
  ExtractGraph g = empty_graph(extracts);
  std::vector<std::set<std::string>> types(extracts.size());
  std::vector<std::size_t> lengths(extracts.size());
  for (std::size_t i = 0; i < extracts.size(); ++i) {
    const auto lemmas = content_lemmas(extracts[i].text, lemmatizer);
    lengths[i] = lemmas.size();
    types[i] = std::set<std::string>(lemmas.begin(), lemmas.end());
  }
  for (std::size_t i = 0; i < extracts.size(); ++i) {
    if (lengths[i] < 2) continue;
    for (std::size_t j = i + 1; j < extracts.size(); ++j) {
      if (lengths[j] < 2) continue;
      std::size_t shared = 0;
      for (const auto& t : types[i]) shared += types[j].count(t);
      if (shared == 0) continue;
      const double denom = std::log(static_cast<double>(lengths[i])) +
                           std::log(static_cast<double>(lengths[j]));
      set_edge(g, i, j, static_cast<double>(shared) / denom);
    }
  }
  return g;
}

ExtractGraph lexrank_weights(const std::vector<Extract>& extracts,
                             std::optional<double> threshold,
                             const Lemmatizer& lemmatizer) {
  ExtractGraph g = empty_graph(extracts);
  const std::size_t n = extracts.size();
  std::vector<std::map<std::string, double>> tf(n);
  std::map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& lemma : content_lemmas(extracts[i].text, lemmatizer)) {
      tf[i][lemma] += 1.0;
    }
    for (const auto& [term, count] : tf[i]) ++df[term];
  }
  std::vector<std::map<std::string, double>> tfidf(n);
  std::vector<double> norms(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [term, count] : tf[i]) {
      const double idf = std::log(static_cast<double>(n) /
                                  static_cast<double>(df[term]));
      const double v = count * idf;
      if (v == 0.0) continue;
      tfidf[i][term] = v;
      norms[i] += v * v;
    }
    norms[i] = std::sqrt(norms[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (norms[i] == 0.0) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norms[j] == 0.0) continue;
      double dot = 0.0;
      for (const auto& [term, v] : tfidf[i]) {
        auto it = tfidf[j].find(term);
        if (it != tfidf[j].end()) dot += v * it->second;
      }
      double cosine = std::clamp(dot / (norms[i] * norms[j]), 0.0, 1.0);
      if (threshold && cosine < *threshold) cosine = 0.0;
      set_edge(g, i, j, cosine);
    }
  }
  return g;
}

RankScores pagerank(const ExtractGraph& graph, const PageRankOptions& options) {
  const std::size_t n = graph.size();
  RankScores result;
  if (n == 0) {
    result.converged = true;
    return result;
  }
  if (options.damping <= 0.0 || options.damping >= 1.0) {
    throw Error("pagerank: damping must lie in (0, 1)");
  }
  std::vector<double> row_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_sum[i] += graph.weight(i, j);
  }
  const double d = options.damping;
  const double teleport = (1.0 - d) / static_cast<double>(n);
  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (row_sum[i] == 0.0) dangling += rank[i];
    }
    std::fill(next.begin(), next.end(),
              teleport + d * dangling / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (row_sum[i] == 0.0) continue;
      const double share = d * rank[i] / row_sum[i];
      for (std::size_t j = 0; j < n; ++j) {
        next[j] += share * graph.weight(i, j);
      }
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      change += std::abs(next[i] - rank[i]);
    }
    rank.swap(next);
    result.iterations = iter + 1;
    if (change < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(rank);
  return result;
}

Summary graph_summary(const std::vector<Extract>& extracts, GraphMethod method,
                      const SummaryConfig& config,
                      const GraphSummaryOptions& options,
                      const Lemmatizer& lemmatizer) {
  Summary summary;
  summary.system = config.system;
  if (extracts.empty()) return summary;
  summary.entity = extracts.front().match.entity;
  summary.category = extracts.front().match.category;

  std::vector<double> scores(extracts.size(), 1.0);
  if (extracts.size() > 1) {
    const ExtractGraph graph =
        method == GraphMethod::kTextRank
            ? textrank_weights(extracts, lemmatizer)
            : lexrank_weights(extracts, options.lexrank_threshold, lemmatizer);
    scores = pagerank(graph, options.pagerank).scores;
  }
  std::vector<std::size_t> order(extracts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const long long sa = score_key(scores[a]);
    const long long sb = score_key(scores[b]);
    if (sa != sb) return sa > sb;
    return std::tie(extracts[a].match.doc_id, extracts[a].match.keyword_loc) <
           std::tie(extracts[b].match.doc_id, extracts[b].match.keyword_loc);
  });
  for (std::size_t idx : order) {
    const Extract& e = extracts[idx];
    if (summary.word_count + e.word_count > config.word_limit) continue;
    summary.word_count += e.word_count;
    summary.origin_sequence.push_back(e.origin);
    summary.selections.push_back(e);
  }
  return summary;
}

std::string graph_to_json(const ExtractGraph& graph) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const Extract& e : graph.nodes) nodes.push_back(e.id());
  j["nodes"] = std::move(nodes);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < graph.size(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < graph.size(); ++k) row.push_back(graph.weight(i, k));
    rows.push_back(std::move(row));
  }
  j["weights"] = std::move(rows);
  return j.dump() + "\n";
}

}  // namespace riskmine
