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

#include "riskmine/pipeline.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "json.hpp"
#include "riskmine/corpus.h"
#include "riskmine/eval.h"
#include "riskmine/graph_baselines.h"
#include "riskmine/taxonomy.h"

namespace riskmine {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

void require(const fs::path& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw UsageError(std::string(flag) + ": " + path.string() + " does not exist");
  }
}

void require_optional(const fs::path& path, const char* flag) {
  if (!path.empty()) require(path, flag);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

Lemmatizer make_lemmatizer(const RunConfig& config) {
  return config.lexicon.empty() ? Lemmatizer() : Lemmatizer::load(config.lexicon);
}

void append(Warnings& into, const Warnings& from) {
  into.insert(into.end(), from.begin(), from.end());
}

bool is_taxonomy_system(System s) {
  return s == System::kSeed || s == System::kExpanded ||
         s == System::kMixedThirds || s == System::kAlternateThirds;
}

bool needs_expanded(System s) {
  return s == System::kExpanded || s == System::kMixedThirds ||
         s == System::kAlternateThirds;
}

using PoolKey = std::pair<std::string, std::string>;  // entity, category

std::map<PoolKey, std::vector<Extract>> group_pools(std::vector<Extract> extracts) {
  std::map<PoolKey, std::vector<Extract>> pools;
  for (Extract& e : extracts) {
    pools[{e.match.entity, e.match.category}].push_back(std::move(e));
  }
  return pools;
}

ojson stats_json(const std::optional<ExtractStats>& stats) {
  ojson j;
  if (!stats) {
    j["count"] = 0;
    j["multi_sentence_fraction"] = nullptr;
    j["mean_distance"] = nullptr;
    j["distance_stddev"] = nullptr;
    return j;
  }
  j["count"] = stats->count;
  j["multi_sentence_fraction"] = stats->multi_sentence_fraction;
  j["mean_distance"] = stats->mean_distance;
  j["distance_stddev"] = stats->distance_stddev;
  return j;
}

ojson complexity_json(const ComplexityEstimate& c) {
  ojson j;
  j["i"] = c.i;
  j["a"] = c.a;
  j["j"] = c.j;
  j["b"] = c.b;
  j["predicted_comparisons"] = c.predicted_comparisons;
  return j;
}

fs::path documents_path(const RunConfig& config) {
  const fs::path p = config.out / artifacts::kDocuments;
  std::error_code ec;
  if (!fs::exists(p, ec)) {
    throw Error("no document cache at " + p.string() + "; run ingest first");
  }
  return p;
}

fs::path extracts_path(const RunConfig& config) {
  const fs::path p = config.out / artifacts::kExtracts;
  std::error_code ec;
  if (!fs::exists(p, ec)) {
    throw Error("no extracts at " + p.string() + "; run mine first");
  }
  return p;
}

}  // namespace

std::string slug(std::string_view text) {
  std::string out;
  for (char c : text) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9');
    out += keep ? c : '_';
  }
  return out.empty() ? "_" : out;
}

StageResult cmd_ingest(const RunConfig& config) {
  require(config.corpus, "--corpus");
  require_optional(config.lexicon, "--lexicon");
  const Lemmatizer lemmatizer = make_lemmatizer(config);

  IngestOptions options;
  options.lemmatizer = &lemmatizer;
  options.threads = config.threads;
  IngestResult ingest = ingest_corpus(config.corpus, options);

  ensure_dir(config.out);
  write_document_cache(config.out / artifacts::kDocuments, ingest.documents);
  ojson stats;
  stats["documents"] = ingest.documents.size();
  stats["skipped_empty"] = ingest.skipped_empty;
  stats["malformed"] = ingest.malformed;
  std::size_t tokens = 0, sentences = 0;
  for (const Document& d : ingest.documents) {
    tokens += d.tokens.size();
    sentences += d.sentences.size();
  }
  stats["tokens"] = tokens;
  stats["sentences"] = sentences;
  write_file(config.out / artifacts::kCorpusStats, stats.dump(2) + "\n");

  StageResult result;
  result.warnings = std::move(ingest.warnings);
  result.report = "ingested " + std::to_string(ingest.documents.size()) +
                  " documents, skipped " + std::to_string(ingest.skipped_empty) +
                  " empty, " + std::to_string(ingest.malformed) + " malformed";
  return result;
}

StageResult cmd_expand(const RunConfig& config) {
  require(config.taxonomy, "--taxonomy");
  if (config.vectors.empty()) {
    throw UsageError("expand needs word vectors: pass --vectors <file> "
                     "(text format, header '<vocab_size> <dim>')");
  }
  require(config.vectors, "--vectors");
  require_optional(config.senses, "--senses");
  require_optional(config.lexicon, "--lexicon");
  if (config.k == 0) throw UsageError("--k must be at least 1");

  StageResult result;
  const Lemmatizer lemmatizer = make_lemmatizer(config);
  const RiskTaxonomy taxonomy =
      load_taxonomy(config.taxonomy, lemmatizer, &result.warnings);
  const WordVectors vectors = WordVectors::load(config.vectors);

  ExpansionOptions options;
  options.k = config.k;
  options.min_similarity = config.min_sim;
  options.threads = config.threads;
  const ExpansionOutcome outcome =
      expand_taxonomy(taxonomy, vectors, options, lemmatizer, &result.warnings);

  ensure_dir(config.out);
  write_taxonomy(config.out / artifacts::kExpandedTaxonomy, outcome.taxonomy);
  write_file(config.out / artifacts::kExpansionReport,
             expansion_report_json(outcome));

  std::size_t added = 0;
  for (const auto& [category, entries] : outcome.report) added += entries.size();
  result.report = "added " + std::to_string(added) + " expanded terms";

  if (!config.senses.empty()) {
    const SenseLexicon senses = SenseLexicon::load(config.senses);
    ojson poly = ojson::object();
    for (const auto& [category, c] : compare_polysemy(outcome.taxonomy, senses)) {
      ojson entry;
      entry["seed"] = c.seed;
      entry["expanded"] = c.expanded;
      entry["increase_pct"] = c.increase_pct;
      poly[category] = std::move(entry);
    }
    write_file(config.out / artifacts::kPolysemy, poly.dump(2) + "\n");
  }
  return result;
}

StageResult cmd_mine(const RunConfig& config) {
  require(config.taxonomy, "--taxonomy");
  require(config.entities, "--entities");
  require_optional(config.lexicon, "--lexicon");

  StageResult result;
  const Lemmatizer lemmatizer = make_lemmatizer(config);
  const RiskTaxonomy taxonomy =
      load_taxonomy(config.taxonomy, lemmatizer, &result.warnings);
  const EntitySet entities =
      load_entities(config.entities, lemmatizer, &result.warnings);
  const std::vector<Document> docs = read_document_cache(documents_path(config));

  std::vector<std::vector<Extract>> per_doc(docs.size());
  std::vector<std::size_t> match_counts(docs.size(), 0);
  parallel_for(docs.size(), config.threads, [&](std::size_t i) {
    const auto matches =
        pair_entities_keywords(docs[i], taxonomy, entities, config.cutoff);
    match_counts[i] = matches.size();
    per_doc[i].reserve(matches.size());
    for (const Match& m : matches) per_doc[i].push_back(retrieve_span(docs[i], m));
  });

  std::vector<Extract> all;
  std::size_t total_matches = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    total_matches += match_counts[i];
    for (Extract& e : per_doc[i]) all.push_back(std::move(e));
  }

  std::vector<Extract> kept;
  for (auto& [key, pool] : group_pools(std::move(all))) {
    for (Extract& e : dedupe(pool)) kept.push_back(std::move(e));
  }
  write_extracts(config.out / artifacts::kExtracts, kept);

  std::optional<ExtractStats> stats;
  if (kept.empty()) {
    warn(&result.warnings, "mine: no entity-keyword matches found");
  } else {
    stats = extract_stats(kept);
  }
  ojson j;
  j["documents"] = docs.size();
  j["matches"] = total_matches;
  j["cutoff"] = config.cutoff;
  j["extracts"] = stats_json(stats);
  j["complexity"] = complexity_json(estimate_complexity(taxonomy, entities, docs));
  write_file(config.out / artifacts::kMineStats, j.dump(2) + "\n");

  result.report = "mined " + std::to_string(total_matches) + " matches, " +
                  std::to_string(kept.size()) + " extracts after dedupe";
  return result;
}

StageResult cmd_summarize(const RunConfig& config) {
  require_optional(config.lexicon, "--lexicon");
  if (config.word_limit == 0) throw UsageError("--word-limit must be positive");
  if (config.systems.empty()) throw UsageError("--system: no systems selected");

  StageResult result;
  const Lemmatizer lemmatizer = make_lemmatizer(config);
  std::vector<Extract> extracts = read_extracts(extracts_path(config));
  const bool have_expanded =
      std::any_of(extracts.begin(), extracts.end(),
                  [](const Extract& e) { return e.origin == Origin::kExpanded; });
  for (System s : config.systems) {
    if (needs_expanded(s) && !have_expanded) {
      throw Error(std::string(system_name(s)) +
                  " needs expanded extracts; mine with an expanded taxonomy first");
    }
  }

  struct Pools {
    PoolKey key;
    RankedPool all, seed, expanded;
  };
  std::vector<Pools> pools;
  for (auto& [key, members] : group_pools(std::move(extracts))) {
    Pools p;
    p.key = key;
    std::vector<Extract> deduped = dedupe(members);
    std::vector<Extract> seed, expanded;
    for (const Extract& e : deduped) {
      (e.origin == Origin::kSeed ? seed : expanded).push_back(e);
    }
    p.all = rank_extracts(std::move(deduped));
    p.seed = rank_extracts(std::move(seed));
    p.expanded = rank_extracts(std::move(expanded));
    pools.push_back(std::move(p));
  }

  const fs::path dir = config.out / artifacts::kSummaries;
  ensure_dir(dir);
  const std::size_t n_systems = config.systems.size();
  std::vector<Warnings> task_warnings(pools.size() * n_systems);
  std::vector<std::string> manifest(pools.size() * n_systems);
  parallel_for(pools.size() * n_systems, config.threads, [&](std::size_t t) {
    const Pools& p = pools[t / n_systems];
    const System system = config.systems[t % n_systems];
    SummaryConfig sc;
    sc.word_limit = config.word_limit;
    sc.system = system;
    sc.random_seed = config.seed;
    Warnings& w = task_warnings[t];

    Summary summary;
    std::optional<ExtractGraph> graph;
    if (is_taxonomy_system(system)) {
      summary = compose_summary(p.seed, p.expanded, sc);
    } else if (system == System::kBaseline) {
      summary = baseline_random(p.all.extracts, sc);
    } else {
      const GraphMethod method =
          system == System::kTextRank ? GraphMethod::kTextRank : GraphMethod::kLexRank;
      summary = graph_summary(p.all.extracts, method, sc, {}, lemmatizer);
      if (config.dump_graphs && p.all.extracts.size() > 1) {
        graph = method == GraphMethod::kTextRank
                    ? textrank_weights(p.all.extracts, lemmatizer)
                    : lexrank_weights(p.all.extracts, std::nullopt, lemmatizer);
      }
    }
    summary.entity = p.key.first;
    summary.category = p.key.second;
    const std::string id = slug(p.key.first) + "__" + slug(p.key.second) + "__" +
                           std::string(system_name(system));
    if (summary.selections.empty()) {
      w.push_back("summarize: " + id + " selected no extracts");
    }
    write_file(dir / (id + ".txt"), summary_text(summary) + "\n");
    write_file(dir / (id + ".json"), summary_sidecar_json(summary));
    if (graph) write_file(dir / (id + ".graph.json"), graph_to_json(*graph));

    ojson m;
    m["summary_id"] = id;
    m["system"] = system_name(system);
    m["entity"] = p.key.first;
    m["category"] = p.key.second;
    m["candidate_path"] = id + ".txt";
    manifest[t] = m.dump();
  });
  for (const Warnings& w : task_warnings) append(result.warnings, w);
  std::string manifest_text;
  for (const std::string& line : manifest) manifest_text += line + "\n";
  write_file(dir / artifacts::kManifest, manifest_text);

  result.report = "wrote " + std::to_string(manifest.size()) + " summaries for " +
                  std::to_string(pools.size()) + " entity-risk pairs";
  return result;
}

StageResult cmd_evaluate(const RunConfig& config) {
  require(config.batch, "--batch");
  StageResult result;
  const auto items = read_eval_batch(config.batch);
  const auto rows = evaluate_batch(items, config.threads, &result.warnings);
  ensure_dir(config.out);
  write_file(config.out / artifacts::kEvaluation, evaluation_csv(rows));
  write_file(config.out / artifacts::kEvaluationBreakdown,
             evaluation_breakdown_csv(rows));
  result.report = "evaluated " + std::to_string(rows.size()) + " of " +
                  std::to_string(items.size()) + " summaries";
  return result;
}

StageResult cmd_stats(const RunConfig& config) {
  require_optional(config.taxonomy, "--taxonomy");
  require_optional(config.entities, "--entities");
  require_optional(config.annotations, "--annotations");
  require_optional(config.lexicon, "--lexicon");

  StageResult result;
  ojson j = ojson::object();
  std::error_code ec;
  const fs::path docs_file = config.out / artifacts::kDocuments;
  if (!config.taxonomy.empty() && !config.entities.empty() &&
      fs::exists(docs_file, ec)) {
    const Lemmatizer lemmatizer = make_lemmatizer(config);
    const auto taxonomy = load_taxonomy(config.taxonomy, lemmatizer, &result.warnings);
    const auto entities = load_entities(config.entities, lemmatizer, &result.warnings);
    j["complexity"] = complexity_json(
        estimate_complexity(taxonomy, entities, read_document_cache(docs_file)));
  }
  const fs::path extracts_file = config.out / artifacts::kExtracts;
  if (fs::exists(extracts_file, ec)) {
    const auto extracts = read_extracts(extracts_file);
    j["extracts"] = stats_json(extracts.empty() ? std::nullopt
                                                : std::optional(extract_stats(extracts)));
  }
  if (!config.annotations.empty()) {
    const auto annotations = read_annotations(config.annotations);
    const PreferenceCounts counts = preference_counts(annotations, &result.warnings);
    ojson pref;
    pref["prefer_system"] = counts.prefer_system;
    pref["prefer_human"] = counts.prefer_human;
    if (counts.prefer_system + counts.prefer_human > 0) {
      const double chi = preference_chi_square(counts);
      pref["chi_square"] = chi;
      pref["p_value"] = chi_square_p_value_df1(chi);
    }
    j["preference"] = std::move(pref);
    const auto pairs = annotation_pairs(annotations, &result.warnings);
    if (!pairs.empty()) {
      j["kappa"] = cohens_kappa(pairs);
      j["kappa_items"] = pairs.size();
    }
  }
  if (j.empty()) {
    throw UsageError("stats: nothing to report; run ingest/mine into --out or "
                     "pass --annotations");
  }
  ensure_dir(config.out);
  const std::string text = j.dump(2) + "\n";
  write_file(config.out / artifacts::kStats, text);
  result.report = text;
  return result;
}

}  // namespace riskmine
