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

#include "riskmine/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace riskmine {

namespace {

using json = nlohmann::json;

enum class CharClass { kSpace, kPunct, kWord };

struct CodePoint {
  char32_t value = 0;
  std::size_t length = 1;
};

// Lenient UTF-8 decoder: invalid lead or continuation bytes decode as a
// one-byte code point equal to the byte value.
CodePoint decode(std::string_view text, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) return {lead, 1};
  std::size_t length = 0;
  char32_t value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
  } else {
    return {lead, 1};
  }
  if (pos + length > text.size()) return {lead, 1};
  for (std::size_t i = 1; i < length; ++i) {
    const auto c = static_cast<unsigned char>(text[pos + i]);
    if ((c & 0xC0) != 0x80) return {lead, 1};
    value = (value << 6) | (c & 0x3F);
  }
  return {value, length};
}

CharClass classify(char32_t c) {
  if (c < 0x80) {
    if (std::isspace(static_cast<int>(c))) return CharClass::kSpace;
    if (std::ispunct(static_cast<int>(c))) return CharClass::kPunct;
    return CharClass::kWord;
  }
  if (c == 0xA0 || (c >= 0x2000 && c <= 0x200B)) return CharClass::kSpace;
  if (c >= 0x2010 && c <= 0x206F) return CharClass::kPunct;
  return CharClass::kWord;
}

bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Strips a verbal suffix when the remaining stem is plausible; undoubles
// a final doubled consonant.
bool strip_verbal(std::string& w, std::size_t suffix_len) {
  std::string stem = w.substr(0, w.size() - suffix_len);
  if (stem.size() < 3) return false;
  if (std::none_of(stem.begin(), stem.end(), is_vowel)) return false;
  const std::size_t n = stem.size();
  if (stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
  }
  w = std::move(stem);
  return true;
}

std::string apply_suffix_rules(std::string w) {
  if (w.empty() ||
      !std::all_of(w.begin(), w.end(), [](char c) {
        return c >= 'a' && c <= 'z';
      })) {
    return w;
  }
  if (w.size() >= 5 && ends_with(w, "ies")) {
    return w.substr(0, w.size() - 3) + "y";
  }
  if (w.size() >= 5 &&
      (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "zes") ||
       ends_with(w, "ches") || ends_with(w, "shes"))) {
    return w.substr(0, w.size() - 2);
  }
  if (w.size() >= 4 && ends_with(w, "s") && !ends_with(w, "ss") &&
      !ends_with(w, "us") && !ends_with(w, "is")) {
    return w.substr(0, w.size() - 1);
  }
  if (w.size() >= 5 && ends_with(w, "ied")) {
    return w.substr(0, w.size() - 3) + "y";
  }
  if (w.size() >= 6 && ends_with(w, "ing")) {
    strip_verbal(w, 3);
    return w;
  }
  if (w.size() >= 5 && ends_with(w, "ed") && !ends_with(w, "eed")) {
    strip_verbal(w, 2);
    return w;
  }
  return w;
}

bool is_sentence_final(std::string_view s) {
  return s == "." || s == "!" || s == "?";
}

bool is_closer(std::string_view s) {
  return s == "\"" || s == "'" || s == ")" || s == "]" ||
         s == "\xE2\x80\x99" || s == "\xE2\x80\x9D";
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "mr", "mrs", "ms", "dr", "prof", "st", "jr", "sr", "gen", "gov",
      "sen", "rep", "lt", "col", "sgt", "capt", "rev", "hon", "mt"};
  return kAbbrev;
}

bool blocks_boundary(const Token& before_period) {
  const std::string& s = before_period.surface;
  if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'Z') return true;
  return abbreviations().count(ascii_lower(s)) > 0;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

struct RawRecord {
  std::string id;
  std::string text;
};

}  // namespace

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_punctuation(std::string_view surface) {
  if (surface.empty()) return false;
  std::size_t pos = 0;
  while (pos < surface.size()) {
    const CodePoint cp = decode(surface, pos);
    if (classify(cp.value) != CharClass::kPunct) return false;
    pos += cp.length;
  }
  return true;
}

std::vector<Token> tokenize(std::string_view raw) {
  std::vector<CodePoint> cps;
  std::vector<std::size_t> offsets;
  for (std::size_t pos = 0; pos < raw.size();) {
    const CodePoint cp = decode(raw, pos);
    cps.push_back(cp);
    offsets.push_back(pos);
    pos += cp.length;
  }
  auto cls = [&](std::size_t i) { return classify(cps[i].value); };
  auto is_word_at = [&](std::size_t i) {
    return i < cps.size() && cls(i) == CharClass::kWord;
  };

  std::vector<Token> tokens;
  auto emit = [&](std::size_t begin, std::size_t end) {
    Token t;
    t.index = tokens.size();
    t.char_start = offsets[begin];
    t.char_end = end < cps.size() ? offsets[end] : raw.size();
    t.surface = std::string(raw.substr(t.char_start, t.char_end - t.char_start));
    tokens.push_back(std::move(t));
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    const CharClass c = cls(i);
    if (c == CharClass::kSpace) {
      ++i;
      continue;
    }
    // A clitic apostrophe glued to the preceding word opens its own token.
    const bool clitic = is_apostrophe(cps[i].value) && i > 0 &&
                        cls(i - 1) == CharClass::kWord && is_word_at(i + 1);
    if (c == CharClass::kPunct && !clitic) {
      emit(i, i + 1);
      ++i;
      continue;
    }
    const std::size_t begin = i;
    if (clitic) ++i;
    while (i < cps.size()) {
      if (cls(i) == CharClass::kWord) {
        ++i;
        continue;
      }
      const char32_t v = cps[i].value;
      if (v == U'-' && is_word_at(i + 1)) {
        i += 2;
        continue;
      }
      if ((v == U'.' || v == U',') && is_ascii_digit(cps[i - 1].value) &&
          i + 1 < cps.size() && is_ascii_digit(cps[i + 1].value)) {
        i += 2;
        continue;
      }
      break;
    }
    emit(begin, i);
  }
  return tokens;
}

Lemmatizer Lemmatizer::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read lemma lexicon " + path.string());
  std::unordered_map<std::string, std::string> lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": expected surface<TAB>lemma");
    }
    lexicon.emplace(line.substr(0, tab), ascii_lower(line.substr(tab + 1)));
  }
  return Lemmatizer(std::move(lexicon));
}

std::string Lemmatizer::lemma(std::string_view surface) const {
  if (!lexicon_.empty()) {
    if (auto it = lexicon_.find(std::string(surface)); it != lexicon_.end()) {
      return it->second;
    }
    if (auto it = lexicon_.find(ascii_lower(surface)); it != lexicon_.end()) {
      return it->second;
    }
  }
  return apply_suffix_rules(ascii_lower(surface));
}

std::string lemmatize(const Token& token, const Lemmatizer& lemmatizer) {
  return lemmatizer.lemma(token.surface);
}

std::vector<Sentence> segment_sentences(std::vector<Token>& tokens) {
  std::vector<Sentence> sentences;
  if (tokens.empty()) return sentences;
  std::size_t start = 0;
  auto close = [&](std::size_t end) {
    Sentence s;
    s.index = sentences.size();
    s.token_start = start;
    s.token_end = end;
    for (std::size_t t = start; t <= end; ++t) tokens[t].sentence_index = s.index;
    sentences.push_back(s);
    start = end + 1;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_sentence_final(tokens[i].surface)) continue;
    if (tokens[i].surface == "." && i > 0 && blocks_boundary(tokens[i - 1])) {
      continue;
    }
    std::size_t end = i;
    while (end + 1 < tokens.size() && is_closer(tokens[end + 1].surface)) {
      ++end;
    }
    if (end + 1 >= tokens.size()) break;
    const char first = tokens[end + 1].surface[0];
    if (first >= 'A' && first <= 'Z') {
      close(end);
      i = end;
    }
  }
  close(tokens.size() - 1);
  return sentences;
}

Document make_document(std::string id, std::string raw,
                       const Lemmatizer& lemmatizer) {
  Document doc;
  doc.id = std::move(id);
  doc.raw = std::move(raw);
  doc.tokens = tokenize(doc.raw);
  for (Token& t : doc.tokens) t.lemma = lemmatize(t, lemmatizer);
  doc.sentences = segment_sentences(doc.tokens);
  return doc;
}

std::vector<std::string> content_lemmas(std::string_view text,
                                        const Lemmatizer& lemmatizer) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(text)) {
    if (!is_punctuation(t.surface)) out.push_back(lemmatize(t, lemmatizer));
  }
  return out;
}

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  for (const Token& t : tokenize(text)) {
    if (!is_punctuation(t.surface)) ++n;
  }
  return n;
}

IngestResult ingest_corpus(const std::filesystem::path& source,
                           const IngestOptions& options) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::exists(source, ec)) {
    throw Error("corpus source does not exist: " + source.string());
  }

  IngestResult result;
  std::vector<RawRecord> records;
  if (fs::is_directory(source, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(source, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    if (ec) throw Error("cannot list " + source.string() + ": " + ec.message());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      records.push_back({f.filename().string(), read_file(f)});
    }
  } else {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw Error("cannot read " + source.string());
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (is_blank(line)) continue;
      const std::string where = source.string() + ":" + std::to_string(line_no);
      json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
      if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
          !j.contains("text") || !j["id"].is_string() ||
          !j["text"].is_string()) {
        ++result.malformed;
        result.warnings.push_back(where + ": malformed record skipped");
        continue;
      }
      RawRecord rec{j["id"].get<std::string>(), j["text"].get<std::string>()};
      if (!seen.insert(rec.id).second) {
        ++result.malformed;
        result.warnings.push_back(where + ": duplicate id '" + rec.id +
                                  "' skipped");
        continue;
      }
      records.push_back(std::move(rec));
    }
  }

  std::vector<RawRecord> kept;
  for (auto& rec : records) {
    if (is_blank(rec.text)) {
      ++result.skipped_empty;
    } else {
      kept.push_back(std::move(rec));
    }
  }
  std::sort(kept.begin(), kept.end(),
            [](const RawRecord& a, const RawRecord& b) { return a.id < b.id; });

  static const Lemmatizer kEmpty;
  const Lemmatizer& lemmatizer =
      options.lemmatizer != nullptr ? *options.lemmatizer : kEmpty;
  result.documents.resize(kept.size());
  parallel_for(kept.size(), options.threads, [&](std::size_t i) {
    result.documents[i] =
        make_document(std::move(kept[i].id), std::move(kept[i].text), lemmatizer);
  });
  return result;
}

std::string serialize_document(const Document& doc) {
  json tokens = json::array();
  for (const Token& t : doc.tokens) {
    tokens.push_back(json::array({t.char_start, t.char_end, t.lemma}));
  }
  json sentences = json::array();
  for (const Sentence& s : doc.sentences) {
    sentences.push_back(json::array({s.token_start, s.token_end}));
  }
  nlohmann::ordered_json out;
  out["id"] = doc.id;
  out["raw"] = doc.raw;
  out["tokens"] = std::move(tokens);
  out["sentences"] = std::move(sentences);
  return out.dump();
}

Document deserialize_document(std::string_view line) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error("document cache: invalid JSON record");
  }
  try {
    Document doc;
    doc.id = j.at("id").get<std::string>();
    doc.raw = j.at("raw").get<std::string>();
    for (const auto& t : j.at("tokens")) {
      Token tok;
      tok.index = doc.tokens.size();
      tok.char_start = t.at(0).get<std::size_t>();
      tok.char_end = t.at(1).get<std::size_t>();
      tok.lemma = t.at(2).get<std::string>();
      if (tok.char_start >= tok.char_end || tok.char_end > doc.raw.size()) {
        throw Error("token offsets out of range");
      }
      tok.surface = doc.raw.substr(tok.char_start, tok.char_end - tok.char_start);
      doc.tokens.push_back(std::move(tok));
    }
    std::size_t expected_start = 0;
    for (const auto& s : j.at("sentences")) {
      Sentence sent;
      sent.index = doc.sentences.size();
      sent.token_start = s.at(0).get<std::size_t>();
      sent.token_end = s.at(1).get<std::size_t>();
      if (sent.token_start != expected_start || sent.token_end < sent.token_start ||
          sent.token_end >= doc.tokens.size()) {
        throw Error("sentence ranges do not partition the tokens");
      }
      for (std::size_t t = sent.token_start; t <= sent.token_end; ++t) {
        doc.tokens[t].sentence_index = sent.index;
      }
      expected_start = sent.token_end + 1;
      doc.sentences.push_back(sent);
    }
    if (expected_start != doc.tokens.size()) {
      throw Error("sentence ranges do not cover the tokens");
    }
    return doc;
  } catch (const json::exception& e) {
    throw Error(std::string("document cache: ") + e.what());
  } catch (const Error& e) {
    throw Error(std::string("document cache: ") + e.what());
  }
}

void write_document_cache(const std::filesystem::path& path,
                          const std::vector<Document>& docs) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (const Document& doc : docs) out << serialize_document(doc) << '\n';
}

std::vector<Document> read_document_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read document cache " + path.string());
  std::vector<Document> docs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    docs.push_back(deserialize_document(line));
  }
  return docs;
}

}  // namespace riskmine
