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

// riskmine: entity-risk extract mining and specificity-ordered summaries.
//
//   riskmine ingest    --corpus DIR|FILE.jsonl --out DIR
//   riskmine expand    --taxonomy T.json --vectors V.txt [--senses S.tsv]
//   riskmine mine      --taxonomy T.json --entities E.txt [--cutoff 100]
//   riskmine summarize [--system Seed,AlternateThirds,...] [--word-limit 100]
//   riskmine evaluate  --batch B.jsonl
//   riskmine stats     [--taxonomy ... --entities ...] [--annotations A.csv]
//
// Every option may also be set in a key=value file passed with --config;
// command-line flags take precedence.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riskmine/pipeline.h"

namespace {

std::vector<riskmine::System> parse_systems(const std::vector<std::string>& raw) {
  std::vector<riskmine::System> systems;
  for (const std::string& item : raw) {
    std::stringstream ss(item);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      if (name == "all") {
        systems.assign(std::begin(riskmine::kAllSystems),
                       std::end(riskmine::kAllSystems));
        continue;
      }
      try {
        systems.push_back(riskmine::parse_system(name));
      } catch (const riskmine::Error& e) {
        throw riskmine::UsageError(std::string("--system: ") + e.what());
      }
    }
  }
  return systems;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entity-risk mining and extractive summarization"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file");

  riskmine::RunConfig config;
  std::string corpus, taxonomy, entities, vectors, senses, lexicon, batch,
      annotations, out = config.out.string();
  std::vector<std::string> systems;

  app.add_option("--corpus", corpus, "Directory of .txt files or JSONL corpus");
  app.add_option("--taxonomy", taxonomy, "Taxonomy JSON");
  app.add_option("--entities", entities, "Entity list, one per line");
  app.add_option("--vectors", vectors, "Word vectors in text format");
  app.add_option("--senses", senses, "Sense-count lexicon TSV");
  app.add_option("--lexicon", lexicon, "Lemma lexicon TSV");
  app.add_option("--cutoff", config.cutoff, "Maximum entity-keyword token distance")
      ->capture_default_str();
  app.add_option("--word-limit", config.word_limit, "Summary word budget")
      ->capture_default_str();
  app.add_option("--k", config.k, "Expansion candidates per seed term")
      ->capture_default_str();
  app.add_option("--min-sim", config.min_sim, "Minimum expansion similarity")
      ->capture_default_str();
  app.add_option("--system", systems,
                 "Systems to run (comma separated or repeated; default all)");
  app.add_option("--seed", config.seed, "Baseline random seed")->capture_default_str();
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--threads", config.threads, "Worker threads")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--batch", batch, "Evaluation batch JSONL");
  app.add_option("--annotations", annotations, "Annotation CSV for kappa/chi-square");
  app.add_flag("--dump-graphs", config.dump_graphs,
               "Write TextRank/LexRank weight matrices next to summaries");

  auto* ingest = app.add_subcommand("ingest", "Tokenize and cache a corpus");
  auto* expand = app.add_subcommand("expand", "Expand the taxonomy with word vectors");
  auto* mine = app.add_subcommand("mine", "Pair entities with risk keywords");
  auto* summarize = app.add_subcommand("summarize", "Compose summaries");
  auto* evaluate = app.add_subcommand("evaluate", "Score summaries against references");
  auto* stats = app.add_subcommand("stats", "Corpus, extract and agreement statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    config.corpus = corpus;
    config.taxonomy = taxonomy;
    config.entities = entities;
    config.vectors = vectors;
    config.senses = senses;
    config.lexicon = lexicon;
    config.batch = batch;
    config.annotations = annotations;
    config.out = out;
    if (!systems.empty()) config.systems = parse_systems(systems);

    riskmine::StageResult result;
    if (*ingest) {
      result = riskmine::cmd_ingest(config);
    } else if (*expand) {
      result = riskmine::cmd_expand(config);
    } else if (*mine) {
      result = riskmine::cmd_mine(config);
    } else if (*summarize) {
      result = riskmine::cmd_summarize(config);
    } else if (*evaluate) {
      result = riskmine::cmd_evaluate(config);
    } else if (*stats) {
      result = riskmine::cmd_stats(config);
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << result.report << (result.report.ends_with('\n') ? "" : "\n");
  } catch (const riskmine::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
