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

#include "riskmine/taxonomy.h"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace riskmine {
namespace {

std::vector<std::string> lemmas_of(std::string_view text) {
  return normalize_lemmas(text, Lemmatizer());
}

std::vector<std::size_t> locate(const Document& doc, std::string_view term) {
  return find_term_locations(doc, lemmas_of(term));
}

TEST(NormalizeTest, LowercasesAndLemmatizes) {
  const RiskTerm t = make_term("Data Breaches", Origin::kSeed, std::nullopt, Lemmatizer());
  EXPECT_EQ(t.text, "data breach");
  EXPECT_EQ(t.source, "Data Breaches");
}

TEST(ParseTaxonomyTest, NormalizesTerms) {
  const auto tax = parse_taxonomy(
      R"({"categories":{"Cybersecurity":[{"text":"Data Breach","origin":"seed"}]}})",
      Lemmatizer());
  ASSERT_EQ(tax.categories.at("Cybersecurity").size(), 1u);
  EXPECT_EQ(tax.categories.at("Cybersecurity")[0].text, "data breach");
  EXPECT_EQ(tax.categories.at("Cybersecurity")[0].origin, Origin::kSeed);
}

TEST(ParseTaxonomyTest, DuplicateTermWarns) {
  Warnings warnings;
  const auto tax = parse_taxonomy(
      R"({"categories":{"Legal":[{"text":"lawsuit"},{"text":"Lawsuits"}]}})",
      Lemmatizer(), &warnings);
  EXPECT_EQ(tax.categories.at("Legal").size(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(ParseTaxonomyTest, TwentyTermCategory) {
  std::string json = R"({"categories":{"Cybersecurity":[)";
  for (int i = 0; i < 20; ++i) {
    if (i) json += ",";
    json += "{\"text\":\"threat" + std::string(1, static_cast<char>('a' + i)) + "\"}";
  }
  json += "]}}";
  const auto tax = parse_taxonomy(json, Lemmatizer());
  EXPECT_EQ(tax.categories.at("Cybersecurity").size(), 20u);
  EXPECT_EQ(tax.term_count(), 20u);
}

TEST(ParseTaxonomyTest, Errors) {
  const Lemmatizer lx;
  EXPECT_THROW(parse_taxonomy(R"({"categories":{"Legal":[]}})", lx), Error);
  EXPECT_THROW(parse_taxonomy(R"({"categories":{"Legal":[{"text":"suit","similarity":0.5}]}})", lx),
               Error);
  EXPECT_THROW(parse_taxonomy(R"({"categories":{"Legal":[{"text":"suit","origin":"expanded"}]}})",
                              lx),
               Error);
  EXPECT_THROW(parse_taxonomy(R"({"categories":{"Legal":[{"text":"suit","origin":"other"}]}})", lx),
               Error);
  EXPECT_THROW(parse_taxonomy(R"({"categories":{"Legal":[{"text":"   "}]}})", lx), Error);
  EXPECT_THROW(parse_taxonomy("[1,2", lx), Error);
  EXPECT_THROW(parse_taxonomy(R"({"terms":[]})", lx), Error);
}

TEST(ParseTaxonomyTest, RoundTripKeepsOriginAndSimilarity) {
  const Lemmatizer lx;
  const auto tax = parse_taxonomy(
      R"({"categories":{"Legal":[{"text":"Lawsuits","origin":"seed"},)"
      R"({"text":"litigation","origin":"expanded","similarity":0.8125}]}})",
      lx);
  const auto again = parse_taxonomy(taxonomy_to_json(tax), lx);
  const auto& terms = again.categories.at("Legal");
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].text, "lawsuit");
  EXPECT_EQ(terms[1].origin, Origin::kExpanded);
  EXPECT_EQ(terms[1].similarity.value(), 0.8125);
}

TEST(LoadEntitiesTest, SkipsCommentsAndDuplicates) {
  const auto path = std::filesystem::temp_directory_path() / "riskmine_entities.txt";
  {
    std::ofstream out(path);
    out << "# fortune list\nAcme Corp\n\nGlobex\nacme corp\n";
  }
  Warnings warnings;
  const EntitySet set = load_entities(path, Lemmatizer(), &warnings);
  ASSERT_EQ(set.entities.size(), 2u);
  EXPECT_EQ(set.entities[0].name, "acme corp");
  EXPECT_EQ(warnings.size(), 1u);
  {
    std::ofstream out(path);
    out << "# nothing\n";
  }
  EXPECT_THROW(load_entities(path, Lemmatizer()), Error);
  std::filesystem::remove(path);
}

TEST(FindTermTest, MultiWordAnchorsFirstToken) {
  const Document doc = make_document("1a", "CNN received a pipe bomb.", Lemmatizer());
  EXPECT_EQ(locate(doc, "pipe bomb"), (std::vector<std::size_t>{3}));
  EXPECT_TRUE(locate(doc, "lawsuit").empty());
}

TEST(FindTermTest, RepeatedSingleWord) {
  const Document doc = make_document(
      "d",
      "Police said that a bomb was found. Officers believe the device was "
      "similar to another pipe bomb found earlier.",
      Lemmatizer());
  ASSERT_EQ(doc.tokens[4].surface, "bomb");
  ASSERT_EQ(doc.tokens[17].surface, "bomb");
  EXPECT_EQ(locate(doc, "bomb"), (std::vector<std::size_t>{4, 17}));
}

TEST(FindTermTest, MatchesDoNotOverlap) {
  const Document doc = make_document("d", "x x x x x", Lemmatizer());
  EXPECT_EQ(locate(doc, "x x"), (std::vector<std::size_t>{0, 2}));
}

Document random_doc(std::mt19937_64& rng, std::size_t max_len) {
  static const char* words[] = {"a", "b", "c", "bombs", "bomb"};
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 4);
  std::string text;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) text += ' ';
    text += words[pick(rng)];
  }
  return make_document("r", text, Lemmatizer());
}

std::vector<std::string> random_term(std::mt19937_64& rng) {
  static const char* words[] = {"a", "b", "c", "bomb"};
  std::uniform_int_distribution<std::size_t> len(1, 3);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<std::string> term;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) term.push_back(words[pick(rng)]);
  return term;
}

TEST(FindTermPropertyTest, LocationsMatchAndIndexAgrees) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const Document doc = random_doc(rng, 30);
    const auto term = random_term(rng);
    const auto locs = find_term_locations(doc, term);
    std::size_t next_free = 0;
    for (std::size_t l : locs) {
      EXPECT_GE(l, next_free);
      ASSERT_LE(l + term.size(), doc.tokens.size());
      for (std::size_t k = 0; k < term.size(); ++k) {
        EXPECT_EQ(doc.tokens[l + k].lemma, term[k]);
      }
      next_free = l + term.size();
    }
    EXPECT_EQ(LemmaIndex(doc).locate(term), locs);
  }
}

TEST(FindTermPropertyTest, MonotoneUnderConcatenation) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const Document a = random_doc(rng, 20);
    const Document b = random_doc(rng, 20);
    const Document ab = make_document("ab", a.raw + " " + b.raw, Lemmatizer());
    const auto term = random_term(rng);
    const auto in_a = find_term_locations(a, term);
    const auto in_ab = find_term_locations(ab, term);
    ASSERT_LE(in_a.size(), in_ab.size());
    for (std::size_t i = 0; i < in_a.size(); ++i) EXPECT_EQ(in_a[i], in_ab[i]);
  }
}

}  // namespace
}  // namespace riskmine
