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

#ifndef RISKMINE_EVAL_H_
#define RISKMINE_EVAL_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "riskmine/common.h"

namespace riskmine {

// Lowercased whitespace tokens with ASCII punctuation removed; tokens that
// become empty are dropped.
std::vector<std::string> metric_tokens(std::string_view text);

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Per-reference scores and their arithmetic mean.
struct RougeScore {
  std::vector<PRF> per_reference;
  PRF mean;
};

// Clipped n-gram overlap. F1 is computed as 2*overlap / (|cand| + |ref|),
// the harmonic mean of P and R without intermediate rounding.
RougeScore rouge_n(std::string_view candidate,
                   const std::vector<std::string>& references, std::size_t n);

// Longest common subsequence over tokens.
RougeScore rouge_l(std::string_view candidate,
                   const std::vector<std::string>& references);

// Units are unigrams plus ordered word pairs with at most `max_gap` words
// between them.
RougeScore rouge_su(std::string_view candidate,
                    const std::vector<std::string>& references,
                    std::size_t max_gap = 4);

inline constexpr double kBleuEpsilon = 1e-9;

// Geometric mean of modified 1..4-gram precisions (counts clipped by the
// maximum count in any reference; a zero numerator becomes epsilon) times
// the brevity penalty against the closest reference length (shorter wins
// ties). An empty candidate scores 0.
double bleu4(std::string_view candidate,
             const std::vector<std::string>& references,
             double epsilon = kBleuEpsilon);

struct ReferenceScores {
  std::string reference;
  double rouge1_f1 = 0.0;
  double rouge2_f1 = 0.0;
  double rougeL_f1 = 0.0;
  double rougeSU4_f1 = 0.0;
  double bleu4 = 0.0;
};

// Aggregates are the mean of the per-reference rows; every metric,
// BLEU included, is computed against one reference at a time.
struct EvaluationReport {
  double rouge1_f1 = 0.0;
  double rouge2_f1 = 0.0;
  double rougeL_f1 = 0.0;
  double rougeSU4_f1 = 0.0;
  double bleu4 = 0.0;
  std::vector<ReferenceScores> per_reference;
};

// `reference_names` labels the breakdown rows; it may be empty.
EvaluationReport evaluate_summary(
    std::string_view candidate, const std::vector<std::string>& references,
    const std::vector<std::string>& reference_names = {});

struct PreferenceCounts {
  std::size_t prefer_system = 0;
  std::size_t prefer_human = 0;
};

// Goodness of fit against an even split, one degree of freedom:
// (a - b)^2 / (a + b), or (|a - b| - 1)^2 / (a + b) with Yates' correction.
double preference_chi_square(const PreferenceCounts& counts, bool yates = false);

// Upper tail probability of the chi-square distribution with one degree of
// freedom.
double chi_square_p_value_df1(double statistic);

using AnnotationPairs = std::vector<std::pair<std::string, std::string>>;

// (p_o - p_e) / (1 - p_e) with p_e from the product of the two annotators'
// marginals. Throws Error on no pairs or when p_e == 1 but p_o < 1.
double cohens_kappa(const AnnotationPairs& pairs);

struct Annotation {
  std::string item_id;
  std::string annotator;
  std::string label;
};

// CSV `item_id,annotator,label`, optional header row.
std::vector<Annotation> read_annotations(const std::filesystem::path& path);

// Items annotated by exactly two annotators, ordered by item id, each pair
// ordered by annotator name. Other items are skipped with a warning.
AnnotationPairs annotation_pairs(const std::vector<Annotation>& annotations,
                                 Warnings* warnings = nullptr);

// Counts labels "system" and "human" (case-insensitive); other labels are
// reported as warnings.
PreferenceCounts preference_counts(const std::vector<Annotation>& annotations,
                                   Warnings* warnings = nullptr);

struct EvalBatchItem {
  std::string summary_id;
  std::string system;
  std::filesystem::path candidate_path;
  std::vector<std::filesystem::path> reference_paths;
};

// JSONL {summary_id, candidate_path, reference_paths[], system?}. Relative
// paths resolve against the batch file's directory.
std::vector<EvalBatchItem> read_eval_batch(const std::filesystem::path& path);

struct EvalRow {
  EvalBatchItem item;
  EvaluationReport report;
};

// Items with a missing candidate or reference file are skipped with a
// warning. Row order follows the batch.
std::vector<EvalRow> evaluate_batch(const std::vector<EvalBatchItem>& items,
                                    unsigned threads = 1,
                                    Warnings* warnings = nullptr);

// One row per summary, then one MEAN row per system (sorted by name).
std::string evaluation_csv(const std::vector<EvalRow>& rows);
// One row per (summary, reference).
std::string evaluation_breakdown_csv(const std::vector<EvalRow>& rows);

}  // namespace riskmine

#endif  // RISKMINE_EVAL_H_
