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

#ifndef RISKMINE_PIPELINE_H_
#define RISKMINE_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "riskmine/common.h"
#include "riskmine/expansion.h"
#include "riskmine/matcher.h"
#include "riskmine/summarizer.h"

namespace riskmine {

// Bad invocation or configuration; the CLI maps it to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::filesystem::path corpus;
  std::filesystem::path taxonomy;
  std::filesystem::path entities;
  std::filesystem::path vectors;
  std::filesystem::path senses;
  std::filesystem::path lexicon;
  std::filesystem::path batch;
  std::filesystem::path annotations;
  std::filesystem::path out = "out";
  std::size_t cutoff = kDefaultCutoff;
  std::size_t word_limit = kDefaultWordLimit;
  std::size_t k = kDefaultExpansionK;
  double min_sim = kDefaultMinSimilarity;
  std::vector<System> systems{std::begin(kAllSystems), std::end(kAllSystems)};
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool dump_graphs = false;
};

// Files written under RunConfig::out.
namespace artifacts {
inline constexpr const char* kDocuments = "documents.jsonl";
inline constexpr const char* kCorpusStats = "corpus_stats.json";
inline constexpr const char* kExpandedTaxonomy = "taxonomy_expanded.json";
inline constexpr const char* kExpansionReport = "expansion_report.json";
inline constexpr const char* kPolysemy = "polysemy.json";
inline constexpr const char* kExtracts = "extracts.jsonl";
inline constexpr const char* kMineStats = "mine_stats.json";
inline constexpr const char* kSummaries = "summaries";
inline constexpr const char* kManifest = "manifest.jsonl";
inline constexpr const char* kEvaluation = "evaluation.csv";
inline constexpr const char* kEvaluationBreakdown = "evaluation_breakdown.csv";
inline constexpr const char* kStats = "stats.json";
}  // namespace artifacts

struct StageResult {
  Warnings warnings;
  std::string report;  // human-readable one-line summary
};

// Each stage validates its inputs first (UsageError), then runs and throws
// Error on runtime failures. Outputs depend only on inputs and config; the
// thread count never changes them.
StageResult cmd_ingest(const RunConfig& config);
StageResult cmd_expand(const RunConfig& config);
StageResult cmd_mine(const RunConfig& config);
StageResult cmd_summarize(const RunConfig& config);
StageResult cmd_evaluate(const RunConfig& config);
StageResult cmd_stats(const RunConfig& config);

// File-name-safe form: ASCII alphanumerics kept, everything else '_'.
std::string slug(std::string_view text);

}  // namespace riskmine

#endif  // RISKMINE_PIPELINE_H_
