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

#ifndef RISKMINE_CORPUS_H_
#define RISKMINE_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "riskmine/common.h"

namespace riskmine {

struct Token {
  std::string surface;
  std::string lemma;
  std::size_t index = 0;
  std::size_t sentence_index = 0;
  // Byte offsets into the raw text, end exclusive.
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  bool operator==(const Token&) const = default;
};

// Inclusive token range.
struct Sentence {
  std::size_t index = 0;
  std::size_t token_start = 0;
  std::size_t token_end = 0;

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string id;
  std::string raw;
  std::vector<Token> tokens;
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

// Splits raw text into tokens. Rules, applied to UTF-8 code points:
//   * ASCII whitespace and the Unicode spaces U+00A0, U+2000..U+200B
//     separate tokens and are never part of one.
//   * ASCII punctuation and the general punctuation block U+2010..U+206F
//     (dashes, curly quotes, ellipsis) form single-character tokens.
//   * Every other code point is a word character; a word token is a maximal
//     run of them, extended by:
//       - '-' between two word characters ("ex-CIA", "pre-litigation"),
//       - '.' or ',' between two ASCII digits ("3.5", "20,000").
//   * An apostrophe (' or U+2019) between two word characters starts a new
//     token that carries the apostrophe ("Costco's" -> "Costco", "'s").
// Only surface, index and offsets are filled in.
std::vector<Token> tokenize(std::string_view raw);

// True when every byte of the surface is ASCII punctuation or the surface is
// a single general-punctuation code point.
bool is_punctuation(std::string_view surface);

// Lowercases ASCII letters; other bytes pass through unchanged.
std::string ascii_lower(std::string_view text);

// Surface -> lemma lookup table with a suffix-rule fallback.
//
// lemma() returns the lexicon entry for the surface (exact, then lowercased)
// when present. Otherwise, for purely alphabetic ASCII words, the first
// matching rule below is applied to the lowercased word w:
//   1. |w| >= 5, "-ies"                       -> "-y"     (companies)
//   2. |w| >= 5, "-sses" "-xes" "-zes" "-ches" "-shes"
//                                             -> drop "es" (breaches)
//   3. |w| >= 4, "-s" but not "-ss" "-us" "-is" -> drop "s" (lawsuits)
//   4. |w| >= 5, "-ied"                       -> "-y"     (denied)
//   5. |w| >= 6, "-ing"                       -> stem     (hacking)
//   6. |w| >= 5, "-ed" but not "-eed"         -> stem     (hacked)
// Rules 5 and 6 require the stem to have at least three letters and a
// vowel, and undouble a final doubled consonant other than l, s, z
// (stopped -> stop). If nothing applies the lowercased surface is returned.
class Lemmatizer {
 public:
  Lemmatizer() = default;
  explicit Lemmatizer(std::unordered_map<std::string, std::string> lexicon)
      : lexicon_(std::move(lexicon)) {}

  // TSV `surface<TAB>lemma`, '#' comments, blank lines ignored.
  static Lemmatizer load(const std::filesystem::path& path);

  std::string lemma(std::string_view surface) const;

  std::size_t size() const { return lexicon_.size(); }

 private:
  std::unordered_map<std::string, std::string> lexicon_;
};

std::string lemmatize(const Token& token, const Lemmatizer& lemmatizer);

// Sentence boundaries fall after a ".", "!" or "?" token (plus any closing
// quotes or brackets that directly follow it) when the next token starts
// with an uppercase ASCII letter. No boundary is placed after a period that
// follows a known title abbreviation (Mr, Dr, Gov, ...) or a single
// uppercase initial. Sets sentence_index on every token.
std::vector<Sentence> segment_sentences(std::vector<Token>& tokens);

// Tokenizes, lemmatizes and segments one text.
Document make_document(std::string id, std::string raw,
                       const Lemmatizer& lemmatizer);

// Splits text with tokenize() and returns the lemmas of the
// non-punctuation tokens.
std::vector<std::string> content_lemmas(std::string_view text,
                                        const Lemmatizer& lemmatizer);

// Number of non-punctuation tokens.
std::size_t count_words(std::string_view text);

struct IngestOptions {
  const Lemmatizer* lemmatizer = nullptr;
  unsigned threads = 1;
};

struct IngestResult {
  // Sorted by id.
  std::vector<Document> documents;
  std::size_t skipped_empty = 0;
  std::size_t malformed = 0;
  Warnings warnings;
};

// Reads either a directory of .txt files (id = file name) or a JSONL file of
// {"id": ..., "text": ...} records. Empty or whitespace-only bodies are
// skipped and counted; malformed or duplicate-id records are skipped with a
// warning. Throws Error when the source cannot be read.
IngestResult ingest_corpus(const std::filesystem::path& source,
                           const IngestOptions& options = {});

// Document cache: one JSON object per line with id, raw text, token offsets
// and lemmas, and sentence ranges.
std::string serialize_document(const Document& doc);
Document deserialize_document(std::string_view line);

void write_document_cache(const std::filesystem::path& path,
                          const std::vector<Document>& docs);
std::vector<Document> read_document_cache(const std::filesystem::path& path);

}  // namespace riskmine

#endif  // RISKMINE_CORPUS_H_
