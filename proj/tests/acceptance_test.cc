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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Oracles here are written independently of the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cli_runner.h"
#include "riskmine/eval.h"
#include "riskmine/expansion.h"
#include "riskmine/graph_baselines.h"
#include "riskmine/matcher.h"
#include "riskmine/pipeline.h"
#include "riskmine/summarizer.h"

namespace riskmine {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const Lemmatizer kPlain;

RiskTaxonomy taxonomy_of(const std::map<std::string, std::vector<std::string>>& cats) {
  RiskTaxonomy tax;
  for (const auto& [name, terms] : cats) {
    for (const auto& t : terms) {
      tax.categories[name].push_back(make_term(t, Origin::kSeed, std::nullopt, kPlain));
    }
  }
  return tax;
}

EntitySet entities_of(const std::vector<std::string>& names) {
  EntitySet set;
  for (const auto& n : names) set.entities.push_back({n, normalize_lemmas(n, kPlain)});
  return set;
}

// --- pairing -------------------------------------------------------------

using MatchKey = std::tuple<std::string, std::string, std::size_t, std::string, std::size_t,
                            std::size_t>;

std::set<MatchKey> brute_force_pairs(const Document& doc, const RiskTaxonomy& tax,
                                     const EntitySet& ents, std::size_t cutoff) {
  // Token-level scan for every occurrence, leftmost non-overlapping.
  auto occurrences = [&](const std::vector<std::string>& lemmas) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + lemmas.size() <= doc.tokens.size();) {
      bool hit = true;
      for (std::size_t k = 0; k < lemmas.size() && hit; ++k) {
        hit = doc.tokens[i + k].lemma == lemmas[k];
      }
      if (hit) {
        out.push_back(i);
        i += lemmas.size();
      } else {
        ++i;
      }
    }
    return out;
  };
  std::set<MatchKey> out;
  for (const auto& [category, terms] : tax.categories) {
    for (const RiskTerm& term : terms) {
      for (std::size_t k : occurrences(term.lemmas)) {
        std::tuple<std::size_t, std::string, std::size_t> best{SIZE_MAX, "", 0};
        for (const Entity& e : ents.entities) {
          for (std::size_t l : occurrences(e.lemmas)) {
            best = std::min(best, std::make_tuple(k > l ? k - l : l - k, e.name, l));
          }
        }
        if (std::get<0>(best) > cutoff) continue;
        out.insert({category, term.text, k, std::get<1>(best), std::get<2>(best),
                    std::get<0>(best)});
      }
    }
  }
  return out;
}

Outcome pairing_oracle() {
  std::mt19937_64 rng(101);
  const auto tax = taxonomy_of({{"Cybersecurity", {"data breach", "hack"}},
                                {"Legal", {"lawsuit", "fine"}},
                                {"Terrorism", {"bomb"}}});
  const auto ents = entities_of({"acme corp", "globex", "initech"});
  const std::vector<std::string> vocab = {"the", "a", "said", "x", "y", ".", "acme", "corp",
                                          "globex", "initech", "data", "breach", "hack",
                                          "lawsuit", "fine", "bomb"};
  std::uniform_int_distribution<std::size_t> len(1, 200), pick(0, vocab.size() - 1);
  const auto start = Clock::now();
  std::size_t matches = 0;
  for (int d = 0; d < 500; ++d) {
    std::string text;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) text += (i ? " " : "") + vocab[pick(rng)];
    const Document doc = make_document("doc" + std::to_string(d), text, kPlain);
    std::set<MatchKey> got;
    for (const Match& m : pair_entities_keywords(doc, tax, ents, kDefaultCutoff)) {
      got.insert({m.category, m.keyword.text, m.keyword_loc, m.entity, m.entity_loc,
                  m.distance});
    }
    matches += got.size();
    if (got != brute_force_pairs(doc, tax, ents, kDefaultCutoff)) {
      return {false, "mismatch on document " + std::to_string(d)};
    }
  }
  const double secs = seconds_since(start);
  return {secs < 10.0, "500 docs, " + std::to_string(matches) + " matches, " +
                           fmt("%.2f s (limit 10 s)", secs)};
}

// --- cutoff monotonicity -------------------------------------------------

Outcome cutoff_monotonicity() {
  const fs::path out = fs::temp_directory_path() / "riskmine_accept_cutoff";
  fs::remove_all(out);
  RunConfig cfg;
  cfg.corpus = testing::kFixture / "corpus";
  cfg.lexicon = testing::kFixture / "lexicon.tsv";
  cfg.taxonomy = testing::kFixture / "taxonomy_seed.json";
  cfg.entities = testing::kFixture / "entities.txt";
  cfg.out = out;
  cmd_ingest(cfg);
  std::vector<std::set<std::string>> sets;
  for (std::size_t cutoff : {10u, 50u, 100u}) {
    cfg.cutoff = cutoff;
    cmd_mine(cfg);
    std::set<std::string> ids;
    for (const Extract& e : read_extracts(out / artifacts::kExtracts)) {
      ids.insert(e.id() + "|" + e.match.category + "|" + e.match.keyword.text);
    }
    sets.push_back(std::move(ids));
  }
  fs::remove_all(out);
  bool ok = true;
  for (std::size_t i = 1; i < sets.size(); ++i) {
    ok = ok && std::includes(sets[i].begin(), sets[i].end(), sets[i - 1].begin(),
                             sets[i - 1].end());
  }
  return {ok, "extracts at 10/50/100: " + std::to_string(sets[0].size()) + "/" +
                  std::to_string(sets[1].size()) + "/" + std::to_string(sets[2].size())};
}

// --- dedupe ---------------------------------------------------------------

Outcome dedupe_property() {
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> texts(0, 9), dist(0, 100), copies(1, 4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Extract> pool;
    const int distinct = texts(rng) + 1;
    for (int t = 0; t < distinct; ++t) {
      const int c = copies(rng);
      for (int k = 0; k < c; ++k) {
        Extract e;
        e.text = "text " + std::to_string(t);
        e.match.distance = static_cast<std::size_t>(dist(rng));
        e.match.doc_id = "d" + std::to_string(k);
        e.match.keyword_loc = static_cast<std::size_t>(k);
        pool.push_back(e);
      }
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto once = dedupe(pool);
    const auto twice = dedupe(once);
    if (once.size() != static_cast<std::size_t>(distinct) || twice.size() != once.size()) {
      return {false, "wrong survivor count in trial " + std::to_string(trial)};
    }
    for (std::size_t i = 0; i < once.size(); ++i) {
      std::size_t best = SIZE_MAX;
      for (const auto& e : pool) {
        if (e.text == once[i].text) best = std::min(best, e.match.distance);
      }
      if (once[i].match.distance != best || twice[i].text != once[i].text ||
          twice[i].match.distance != once[i].match.distance) {
        return {false, "survivor is not minimal or not idempotent in trial " +
                           std::to_string(trial)};
      }
    }
  }
  return {true, "500 planted-duplicate pools"};
}

// --- selection patterns -----------------------------------------------------

std::vector<Extract> uniform_pool(std::mt19937_64& rng, int n, Origin origin,
                                  const std::string& prefix) {
  std::uniform_int_distribution<std::size_t> words(31, 33), dist(0, 60);
  std::vector<Extract> pool;
  for (int i = 0; i < n; ++i) {
    Extract e;
    e.text = prefix + std::to_string(i);
    e.match.keyword.text = prefix + "kw" + std::to_string(i);
    e.match.doc_id = prefix;
    e.match.keyword_loc = static_cast<std::size_t>(i);
    e.match.distance = dist(rng);
    e.origin = origin;
    e.match.keyword.origin = origin;
    e.word_count = words(rng);
    pool.push_back(e);
  }
  return pool;
}

Outcome selection_patterns() {
  std::mt19937_64 rng(107);
  const std::vector<Origin> alt = {Origin::kExpanded, Origin::kSeed, Origin::kExpanded};
  const std::vector<Origin> mixed = {Origin::kExpanded, Origin::kSeed, Origin::kSeed};
  std::size_t summaries = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto seed = rank_extracts(uniform_pool(rng, 6, Origin::kSeed, "s"));
    const auto expanded = rank_extracts(uniform_pool(rng, 6, Origin::kExpanded, "e"));
    SummaryConfig cfg;
    cfg.word_limit = 100;
    for (System s : kAllSystems) {
      cfg.system = s;
      Summary sum;
      std::vector<Extract> all = seed.extracts;
      all.insert(all.end(), expanded.extracts.begin(), expanded.extracts.end());
      if (s == System::kBaseline) {
        cfg.random_seed = static_cast<std::uint64_t>(trial);
        sum = baseline_random(all, cfg);
      } else if (s == System::kTextRank || s == System::kLexRank) {
        sum = graph_summary(all, s == System::kTextRank ? GraphMethod::kTextRank
                                                        : GraphMethod::kLexRank,
                            cfg);
      } else {
        sum = compose_summary(seed, expanded, cfg);
      }
      ++summaries;
      if (sum.word_count > cfg.word_limit) return {false, "budget exceeded"};
      if (s == System::kAlternateThirds && sum.origin_sequence != alt) {
        return {false, "AlternateThirds pattern broken in trial " + std::to_string(trial)};
      }
      if (s == System::kMixedThirds && sum.origin_sequence != mixed) {
        return {false, "MixedThirds pattern broken in trial " + std::to_string(trial)};
      }
    }
  }
  return {true, std::to_string(summaries) + " summaries, n=100, 31-33 word extracts"};
}

// --- ranking ---------------------------------------------------------------

Outcome ranking_oracle() {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> kw(0, 5), dist(0, 9), doc(0, 4), size(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Extract> pool;
    std::set<std::tuple<int, int, int>> used;
    const int n = size(rng);
    while (static_cast<int>(pool.size()) < n) {
      const int k = kw(rng), d = doc(rng), l = static_cast<int>(pool.size());
      used.insert({k, d, l});
      Extract e;
      e.match.keyword.text = "k" + std::to_string(k);
      e.match.doc_id = "doc" + std::to_string(d);
      e.match.keyword_loc = static_cast<std::size_t>(l);
      e.match.distance = static_cast<std::size_t>(dist(rng));
      e.text = std::to_string(pool.size());
      pool.push_back(e);
    }
    std::map<std::string, int> freq;
    for (const auto& e : pool) ++freq[e.match.keyword.text];
    std::vector<Extract> want = pool;
    std::sort(want.begin(), want.end(), [&](const Extract& x, const Extract& y) {
      return std::make_tuple(-freq[x.match.keyword.text], x.match.distance, x.match.doc_id,
                             x.match.keyword_loc) <
             std::make_tuple(-freq[y.match.keyword.text], y.match.distance, y.match.doc_id,
                             y.match.keyword_loc);
    });
    const auto got = rank_extracts(pool).extracts;
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (got[i].text != want[i].text) {
        return {false, "order differs in pool " + std::to_string(trial)};
      }
    }
  }
  return {true, "200 random pools"};
}

// --- expansion ---------------------------------------------------------------

Outcome expansion_oracle() {
  std::mt19937_64 rng(113);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t dim = 16;
  WordVectors vectors(dim);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(dim);
    for (auto& x : v) x = g(rng);
    rows.push_back(v);
    vectors.add("word" + std::to_string(i), v);
  }
  auto cosine = [&](const std::vector<double>& a, const std::vector<double>& b) {
    long double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      dot += static_cast<long double>(a[i]) * b[i];
      na += static_cast<long double>(a[i]) * a[i];
      nb += static_cast<long double>(b[i]) * b[i];
    }
    return static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
  };
  double worst_identity = 0, worst_symmetry = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    worst_identity = std::max(worst_identity, std::abs(similarity(rows[i], rows[i]) - 1.0));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      worst_symmetry = std::max(worst_symmetry,
                                std::abs(similarity(rows[i], rows[j]) - similarity(rows[j], rows[i])));
    }
  }
  ExpansionOptions opts;
  opts.k = 100;
  opts.min_similarity = -1.0;
  const std::vector<int> seeds = {0, 17, 42, 99};
  std::map<std::string, std::vector<std::string>> cats;
  for (int s : seeds) cats["C" + std::to_string(s)] = {"word" + std::to_string(s)};
  const auto outcome = expand_taxonomy(taxonomy_of(cats), vectors, opts, kPlain);
  if (outcome.per_seed.size() != seeds.size()) return {false, "missing seed results"};
  double worst_score = 0;
  for (const auto& result : outcome.per_seed) {
    const int s = std::stoi(result.seed_term.substr(4));
    std::vector<std::pair<double, std::string>> want;
    for (int i = 0; i < 100; ++i) {
      if (i != s) want.emplace_back(-cosine(rows[static_cast<std::size_t>(s)], rows[static_cast<std::size_t>(i)]), "word" + std::to_string(i));
    }
    std::sort(want.begin(), want.end());
    if (result.candidates.size() != want.size()) return {false, "candidate count differs"};
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (result.candidates[i].term != want[i].second) {
        return {false, "ranking differs for " + result.seed_term};
      }
      worst_score = std::max(worst_score, std::abs(result.candidates[i].similarity + want[i].first));
    }
  }
  const bool ok = worst_identity <= 1e-12 && worst_symmetry <= 1e-12 && worst_score <= 1e-12;
  return {ok, "100-word vocabulary, 4 seeds; max |sim(v,v)-1|=" + fmt("%.1e", worst_identity) +
                  ", max asymmetry=" + fmt("%.1e", worst_symmetry)};
}

// --- polysemy ------------------------------------------------------------------

// Builds `words` distinct words whose sense counts total `senses`.
std::vector<std::string> planted_terms(const std::string& prefix, int words, int senses,
                                       std::unordered_map<std::string, int>& lexicon) {
  std::vector<std::string> terms;
  int remaining = senses;
  for (int i = 0; i < words; ++i) {
    const int left = words - i;
    const int count = (remaining + left - 1) / left;
    const std::string w = prefix + std::to_string(i);
    lexicon[w] = count;
    remaining -= count;
    terms.push_back(w);
  }
  return terms;
}

Outcome polysemy_fixture() {
  struct Row {
    const char* category;
    int seed_senses, expanded_senses;
    double published;
  };
  // 100 words per set, so the averages are exactly the two-decimal values.
  const Row rows[] = {{"Cybersecurity", 140, 241, 72.14},
                      {"Terrorism", 213, 246, 15.49},
                      {"Legal", 173, 360, 108.09}};
  std::string detail;
  bool ok = true;
  for (const Row& row : rows) {
    std::unordered_map<std::string, int> counts;
    const auto seed = planted_terms(std::string(row.category) + "s", 100, row.seed_senses, counts);
    const auto expanded =
        planted_terms(std::string(row.category) + "e", 100, row.expanded_senses, counts);
    const SenseLexicon lexicon(counts);
    const double pct =
        percentage_increase(polysemy_average(seed, lexicon), polysemy_average(expanded, lexicon));
    ok = ok && std::abs(pct - row.published) <= 0.01;
    detail += std::string(detail.empty() ? "" : ", ") + row.category + " " + fmt("%+.2f%%", pct);
  }
  return {ok, detail};
}

// --- metrics -------------------------------------------------------------------

Outcome metric_oracles() {
  const std::string ten = "acme corp paid a fine after regulators found the breach";
  const auto rep = evaluate_summary(ten, {ten});
  std::vector<AnnotationPairs::value_type> pairs;
  for (int i = 0; i < 4; ++i) pairs.push_back({"A", "A"});
  pairs.push_back({"A", "B"});
  pairs.push_back({"B", "A"});
  for (int i = 0; i < 4; ++i) pairs.push_back({"B", "B"});
  const double r1 = rouge_n("the cat sat", {"the cat"}, 1).mean.f1;
  const double rl = rouge_l("a x b y c", {"a b c"}).mean.f1;
  const double chi = preference_chi_square({70, 30});
  const double kappa = cohens_kappa(pairs);
  const bool identical = std::abs(rep.rouge1_f1 - 1) <= 1e-9 && std::abs(rep.rouge2_f1 - 1) <= 1e-9 &&
                         std::abs(rep.rougeL_f1 - 1) <= 1e-9 &&
                         std::abs(rep.rougeSU4_f1 - 1) <= 1e-9 && std::abs(rep.bleu4 - 1) <= 1e-9;
  const bool ok = r1 == 0.8 && rl == 0.75 && identical && chi == 16.0 &&
                  std::abs(kappa - 0.6) <= 1e-9 && metric_tokens(ten).size() == 10;
  return {ok, "rouge1=" + fmt("%.17g", r1) + " rougeL=" + fmt("%.17g", rl) +
                  " chi2=" + fmt("%.17g", chi) + " kappa=" + fmt("%.12f", kappa) +
                  " identical bleu4=" + fmt("%.12f", rep.bleu4)};
}

// --- pagerank --------------------------------------------------------------------

Outcome pagerank_criteria() {
  ExtractGraph complete;
  complete.nodes.resize(4);
  complete.weights.assign(16, 1.0);
  for (std::size_t i = 0; i < 4; ++i) complete.weights[i * 4 + i] = 0.0;
  const auto even = pagerank(complete);
  double worst_even = 0;
  for (double s : even.scores) worst_even = std::max(worst_even, std::abs(s - 0.25));

  std::mt19937_64 rng(127);
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  std::bernoulli_distribution edge(0.4);
  double worst_sum = 0, worst_scale = 0;
  const PageRankOptions defaults;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(trial % 15 + 1);
    ExtractGraph g;
    g.nodes.resize(n);
    g.weights.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (edge(rng)) g.weights[i * n + j] = g.weights[j * n + i] = weight(rng);
      }
    }
    ExtractGraph scaled = g;
    for (double& w : scaled.weights) w *= 10.0;
    const auto a = pagerank(g);
    const auto b = pagerank(scaled);
    worst_sum = std::max(worst_sum,
                         std::abs(std::accumulate(a.scores.begin(), a.scores.end(), 0.0) - 1.0));
    for (std::size_t i = 0; i < n; ++i) {
      worst_scale = std::max(worst_scale, std::abs(a.scores[i] - b.scores[i]));
    }
  }
  const bool ok = even.converged && worst_even <= 1e-6 && worst_sum <= 1e-9 &&
                  worst_scale <= defaults.tol;
  return {ok, "complete K4 max dev=" + fmt("%.1e", worst_even) +
                  ", max |sum-1|=" + fmt("%.1e", worst_sum) +
                  ", max scaling drift=" + fmt("%.1e", worst_scale)};
}

// --- determinism ---------------------------------------------------------------------

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "riskmine_accept_determinism";
  std::vector<std::map<std::string, std::string>> snaps;
  for (unsigned threads : {1u, 1u, 8u}) {
    const auto r = testing::run_fixture_pipeline(base, threads);
    if (r.exit_code != 0) return {false, "pipeline failed: " + r.err};
    snaps.push_back(testing::snapshot(base));
  }
  fs::remove_all(base);
  std::size_t summaries = 0;
  for (const auto& [name, body] : snaps[0]) {
    summaries += name.rfind("summaries/", 0) == 0 && name.ends_with(".txt");
  }
  const bool ok = snaps[0] == snaps[1] && snaps[0] == snaps[2] && summaries > 0 &&
                  snaps[0].count("evaluation.csv") == 1;
  return {ok, std::to_string(snaps[0].size()) + " files (" + std::to_string(summaries) +
                  " summaries) identical across 2 runs and --threads 1 vs 8"};
}

// --- throughput --------------------------------------------------------------------

Outcome throughput() {
  const fs::path out = fs::temp_directory_path() / "riskmine_accept_throughput";
  fs::remove_all(out);
  fs::create_directories(out);
  std::mt19937_64 rng(131);
  std::vector<std::string> keywords, entities;
  for (int i = 0; i < 50; ++i) keywords.push_back("riskterm" + std::to_string(i));
  for (int i = 0; i < 10; ++i) entities.push_back("company" + std::to_string(i));
  const std::vector<std::string> filler = {"the", "a", "market", "said", "on", "and",
                                           "reported", "shares", "year", "with"};
  std::uniform_int_distribution<int> roll(0, 99);
  std::uniform_int_distribution<std::size_t> fpick(0, filler.size() - 1), kpick(0, 49),
      epick(0, 9);
  {
    std::ofstream corpus(out / "corpus.jsonl");
    for (int d = 0; d < 10000; ++d) {
      std::string text;
      for (int t = 0; t < 200; ++t) {
        const int r = roll(rng);
        const std::string w = r < 3 ? keywords[kpick(rng)]
                              : r < 6 ? entities[epick(rng)]
                                      : filler[fpick(rng)];
        text += (t ? (t % 20 == 0 ? ". " : " ") : "") + w;
      }
      nlohmann::json rec;
      rec["id"] = "doc" + std::to_string(d);
      rec["text"] = text + ".";
      corpus << rec.dump() << "\n";
    }
  }
  {
    nlohmann::json tax;
    for (int i = 0; i < 50; ++i) {
      tax["categories"]["Category" + std::to_string(i % 5)].push_back(
          {{"text", keywords[static_cast<std::size_t>(i)]}});
    }
    std::ofstream(out / "taxonomy.json") << tax.dump();
    std::ofstream ents(out / "entities.txt");
    for (const auto& e : entities) ents << e << "\n";
  }
  RunConfig cfg;
  cfg.corpus = out / "corpus.jsonl";
  cfg.taxonomy = out / "taxonomy.json";
  cfg.entities = out / "entities.txt";
  cfg.out = out;
  cfg.threads = 4;
  cmd_ingest(cfg);
  const auto start = Clock::now();
  const StageResult r = cmd_mine(cfg);
  const double secs = seconds_since(start);
  fs::remove_all(out);
  return {secs < 60.0, r.report + ", " + fmt("%.2f s (limit 60 s, soft)", secs)};
}

}  // namespace
}  // namespace riskmine

int main() {
  using riskmine::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"pairing-oracle", riskmine::pairing_oracle},
      {"cutoff-monotonicity", riskmine::cutoff_monotonicity},
      {"dedupe", riskmine::dedupe_property},
      {"selection-patterns", riskmine::selection_patterns},
      {"ranking-oracle", riskmine::ranking_oracle},
      {"expansion-oracle", riskmine::expansion_oracle},
      {"polysemy-fixture", riskmine::polysemy_fixture},
      {"metric-oracles", riskmine::metric_oracles},
      {"pagerank", riskmine::pagerank_criteria},
      {"determinism", riskmine::determinism},
      {"throughput", riskmine::throughput},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %-20s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
