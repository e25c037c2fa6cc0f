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

#include "riskmine/summarizer.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"

namespace riskmine {

namespace {

struct Selection {
  Summary summary;
  std::set<std::string> round_keywords;

  bool fits(const Extract& e, std::size_t limit) const {
    return summary.word_count + e.word_count <= limit;
  }

  void take(Extract e) {
    round_keywords.insert(e.match.keyword.text);
    summary.word_count += e.word_count;
    summary.origin_sequence.push_back(e.origin);
    summary.selections.push_back(std::move(e));
  }
};

// Takes the first eligible extract of the pool, if any.
bool take_first_eligible(std::vector<Extract>& remaining, Selection& sel,
                         std::size_t limit) {
  for (auto it = remaining.begin(); it != remaining.end(); ++it) {
    if (sel.round_keywords.count(it->match.keyword.text) > 0) continue;
    if (!sel.fits(*it, limit)) continue;
    Extract e = std::move(*it);
    remaining.erase(it);
    sel.take(std::move(e));
    return true;
  }
  return false;
}

bool any_fits(const std::vector<Extract>& remaining, const Selection& sel,
              std::size_t limit) {
  return std::any_of(remaining.begin(), remaining.end(),
                     [&](const Extract& e) { return sel.fits(e, limit); });
}

void fill_identity(Summary& s, const std::vector<Extract>& a,
                   const std::vector<Extract>& b) {
  const Extract* first = !a.empty() ? &a.front() : (!b.empty() ? &b.front() : nullptr);
  if (first != nullptr) {
    s.entity = first->match.entity;
    s.category = first->match.category;
  }
}

// Shared slot loop. `pick_primary(slot)` is true when the slot draws from
// `primary` first.
template <typename Pattern>
Summary run_slots(const RankedPool& primary, const RankedPool& secondary,
                  const SummaryConfig& config, Pattern pick_primary) {
  std::vector<Extract> first = primary.extracts;
  std::vector<Extract> second = secondary.extracts;
  Selection sel;
  sel.summary.system = config.system;
  fill_identity(sel.summary, first, second);
  const std::size_t limit = config.word_limit;

  std::size_t slot = 0;
  for (;;) {
    auto& designated = pick_primary(slot) ? first : second;
    auto& other = pick_primary(slot) ? second : first;
    if (take_first_eligible(designated, sel, limit) ||
        take_first_eligible(other, sel, limit)) {
      ++slot;
      continue;
    }
    if (!any_fits(first, sel, limit) && !any_fits(second, sel, limit)) break;
    sel.round_keywords.clear();
    first = rank_extracts(std::move(first)).extracts;
    second = rank_extracts(std::move(second)).extracts;
  }
  return std::move(sel.summary);
}

}  // namespace

std::string_view system_name(System system) {
  switch (system) {
    case System::kSeed: return "Seed";
    case System::kExpanded: return "Expanded";
    case System::kMixedThirds: return "MixedThirds";
    case System::kAlternateThirds: return "AlternateThirds";
    case System::kBaseline: return "Baseline";
    case System::kTextRank: return "TextRank";
    case System::kLexRank: return "LexRank";
  }
  return "Unknown";
}

System parse_system(std::string_view name) {
  for (System s : kAllSystems) {
    if (system_name(s) == name) return s;
  }
  throw Error("unknown system '" + std::string(name) + "'");
}

RankedPool rank_extracts(std::vector<Extract> extracts) {
  std::map<std::string, std::size_t> frequency;
  for (const Extract& e : extracts) ++frequency[e.match.keyword.text];
  std::stable_sort(extracts.begin(), extracts.end(),
                   [&](const Extract& x, const Extract& y) {
                     const std::size_t fx = frequency[x.match.keyword.text];
                     const std::size_t fy = frequency[y.match.keyword.text];
                     if (fx != fy) return fx > fy;
                     return std::tie(x.match.distance, x.match.doc_id,
                                     x.match.keyword_loc, x.match.keyword.text,
                                     x.match.entity_loc) <
                            std::tie(y.match.distance, y.match.doc_id,
                                     y.match.keyword_loc, y.match.keyword.text,
                                     y.match.entity_loc);
                   });
  return RankedPool{std::move(extracts)};
}

Summary select_extracts(const RankedPool& pool, const SummaryConfig& config,
                        Warnings* warnings) {
  if (pool.extracts.empty()) {
    warn(warnings, "summarizer: empty extract pool");
    Summary empty;
    empty.system = config.system;
    return empty;
  }
  return run_slots(pool, RankedPool{}, config, [](std::size_t) { return true; });
}

Summary compose_summary(const RankedPool& seed_pool,
                        const RankedPool& expanded_pool,
                        const SummaryConfig& config, Warnings* warnings) {
  switch (config.system) {
    case System::kSeed:
      return select_extracts(seed_pool, config, warnings);
    case System::kExpanded:
      return select_extracts(expanded_pool, config, warnings);
    case System::kMixedThirds:
    case System::kAlternateThirds:
      break;
    default:
      throw Error("compose_summary: system " + std::string(system_name(config.system)) +
                  " is not a taxonomy-driven system");
  }
  if (seed_pool.extracts.empty() && expanded_pool.extracts.empty()) {
    warn(warnings, "summarizer: both extract pools are empty");
    Summary empty;
    empty.system = config.system;
    return empty;
  }
  if (config.system == System::kMixedThirds) {
    return run_slots(expanded_pool, seed_pool, config,
                     [](std::size_t slot) { return slot == 0; });
  }
  return run_slots(expanded_pool, seed_pool, config,
                   [](std::size_t slot) { return slot % 2 == 0; });
}

XorShift64Star::XorShift64Star(std::uint64_t seed)
    : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ULL) {}

std::uint64_t XorShift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

std::uint64_t XorShift64Star::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error("uniform draw from an empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

Summary baseline_random(const std::vector<Extract>& pool,
                        const SummaryConfig& config) {
  Selection sel;
  sel.summary.system = config.system;
  fill_identity(sel.summary, pool, {});
  XorShift64Star rng(config.random_seed);
  std::vector<Extract> remaining = pool;
  for (;;) {
    std::vector<std::size_t> fitting;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (sel.fits(remaining[i], config.word_limit)) fitting.push_back(i);
    }
    if (fitting.empty()) break;
    const std::size_t pick = fitting[rng.uniform(fitting.size())];
    Extract e = std::move(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    sel.take(std::move(e));
  }
  return std::move(sel.summary);
}

std::string summary_text(const Summary& summary) {
  std::string out;
  for (const Extract& e : summary.selections) {
    if (!out.empty()) out += ' ';
    out += e.text;
  }
  return out;
}

std::string summary_sidecar_json(const Summary& summary) {
  nlohmann::ordered_json j;
  j["entity"] = summary.entity;
  j["category"] = summary.category;
  j["system"] = system_name(summary.system);
  j["word_count"] = summary.word_count;
  nlohmann::ordered_json origins = nlohmann::ordered_json::array();
  for (Origin o : summary.origin_sequence) origins.push_back(origin_name(o));
  j["origin_sequence"] = std::move(origins);
  nlohmann::ordered_json ids = nlohmann::ordered_json::array();
  for (const Extract& e : summary.selections) ids.push_back(e.id());
  j["selections"] = std::move(ids);
  return j.dump(2) + "\n";
}

}  // namespace riskmine
