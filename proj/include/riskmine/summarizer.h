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

#ifndef RISKMINE_SUMMARIZER_H_
#define RISKMINE_SUMMARIZER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "riskmine/common.h"
#include "riskmine/matcher.h"

namespace riskmine {

inline constexpr std::size_t kDefaultWordLimit = 100;

enum class System {
  kSeed,
  kExpanded,
  kMixedThirds,
  kAlternateThirds,
  kBaseline,
  kTextRank,
  kLexRank,
};

inline constexpr System kAllSystems[] = {
    System::kSeed,     System::kExpanded, System::kMixedThirds,
    System::kAlternateThirds, System::kBaseline, System::kTextRank,
    System::kLexRank};

std::string_view system_name(System system);
System parse_system(std::string_view name);

struct SummaryConfig {
  std::size_t word_limit = kDefaultWordLimit;
  System system = System::kSeed;
  std::uint64_t random_seed = 0;
};

struct Summary {
  std::string entity;
  std::string category;
  System system = System::kSeed;
  std::vector<Extract> selections;
  std::size_t word_count = 0;
  std::vector<Origin> origin_sequence;
};

// Extracts ordered by (keyword frequency in the pool desc, distance asc,
// doc_id asc, keyword_loc asc), with keyword text and entity location as the
// final tie-breaks.
struct RankedPool {
  std::vector<Extract> extracts;
};

RankedPool rank_extracts(std::vector<Extract> extracts);

// Keyword-round selection over one ranked pool. Each round walks the ranking
// and takes every extract whose keyword is new to the round and whose words
// still fit the budget (word_count <= word_limit). When a round ends with
// candidates that would fit but repeat a round keyword, the round's keyword
// set is cleared and the residual pool is re-ranked. Selection ends when no
// remaining extract fits. An empty pool yields an empty summary and a
// warning.
Summary select_extracts(const RankedPool& pool, const SummaryConfig& config,
                        Warnings* warnings = nullptr);

// Seed and Expanded select from one pool. MixedThirds draws the first slot
// from the expanded pool and the rest from the seed pool; AlternateThirds
// alternates expanded, seed, expanded, ... Slots share the keyword round and
// the word budget, and a slot whose pool has no eligible extract is filled
// from the other pool.
Summary compose_summary(const RankedPool& seed_pool,
                        const RankedPool& expanded_pool,
                        const SummaryConfig& config,
                        Warnings* warnings = nullptr);

// xorshift64* generator: state ^= state >> 12; state ^= state << 25;
// state ^= state >> 27; output = state * 0x2545F4914F6CDD1D. A zero seed is
// replaced by 0x9E3779B97F4A7C15.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed);

  std::uint64_t next();
  // Unbiased draw from [0, bound) by rejecting outputs below
  // (2^64 - bound) mod bound, then reducing modulo bound.
  std::uint64_t uniform(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Repeatedly draws uniformly among the remaining extracts that still fit the
// budget, without replacement, until none fits.
Summary baseline_random(const std::vector<Extract>& pool,
                        const SummaryConfig& config);

// Selections joined by a single space.
std::string summary_text(const Summary& summary);

// {entity, category, system, word_count, origin_sequence, selections}
std::string summary_sidecar_json(const Summary& summary);

}  // namespace riskmine

#endif  // RISKMINE_SUMMARIZER_H_
