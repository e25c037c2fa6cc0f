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

#ifndef RISKMINE_GRAPH_BASELINES_H_
#define RISKMINE_GRAPH_BASELINES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "riskmine/corpus.h"
#include "riskmine/matcher.h"
#include "riskmine/summarizer.h"

namespace riskmine {

// Undirected weighted graph over extracts. Weights are dense, row-major,
// symmetric, non-negative, with a zero diagonal.
struct ExtractGraph {
  std::vector<Extract> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double weight(std::size_t i, std::size_t j) const {
    return weights[i * nodes.size() + j];
  }
};

struct RankScores {
  std::vector<double> scores;  // sum to 1
  bool converged = false;
  std::size_t iterations = 0;
};

struct PageRankOptions {
  double damping = 0.85;
  std::size_t max_iters = 100;
  double tol = 1e-6;
};

// Edge weight = |shared lemma types| / (log|tokens_i| + log|tokens_j|) over
// non-punctuation tokens; zero when either extract has fewer than two tokens.
ExtractGraph textrank_weights(const std::vector<Extract>& extracts,
                              const Lemmatizer& lemmatizer = {});

// Edge weight = cosine of TF-IDF vectors with raw term counts and
// idf = log(N / df) computed over the extracts themselves. Weights below
// `threshold` are zeroed; extracts with an all-zero vector get weight 0.
ExtractGraph lexrank_weights(const std::vector<Extract>& extracts,
                             std::optional<double> threshold = std::nullopt,
                             const Lemmatizer& lemmatizer = {});

// Power iteration over the row-normalized weights with uniform teleport.
// Rows without edges redistribute uniformly. Stops when the L1 change drops
// below tol or after max_iters; `converged` reports which.
RankScores pagerank(const ExtractGraph& graph,
                    const PageRankOptions& options = {});

enum class GraphMethod { kTextRank, kLexRank };

struct GraphSummaryOptions {
  PageRankOptions pagerank;
  std::optional<double> lexrank_threshold;
};

// Takes extracts by descending score (ties: doc_id, then keyword_loc) while
// they fit the word budget.
Summary graph_summary(const std::vector<Extract>& extracts, GraphMethod method,
                      const SummaryConfig& config,
                      const GraphSummaryOptions& options = {},
                      const Lemmatizer& lemmatizer = {});

// {"nodes": [extract ids], "weights": [[...], ...]}
std::string graph_to_json(const ExtractGraph& graph);

}  // namespace riskmine

#endif  // RISKMINE_GRAPH_BASELINES_H_
