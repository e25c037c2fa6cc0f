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

#include "riskmine/eval.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace riskmine {

namespace {

using Counts = std::map<std::vector<std::string>, std::size_t>;

Counts ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  Counts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

std::size_t total(const Counts& counts) {
  std::size_t n = 0;
  for (const auto& [gram, c] : counts) n += c;
  return n;
}

std::size_t clipped_overlap(const Counts& cand, const Counts& ref) {
  std::size_t overlap = 0;
  for (const auto& [gram, c] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  return overlap;
}

PRF from_counts(std::size_t overlap, std::size_t cand_total, std::size_t ref_total) {
  PRF s;
  if (cand_total > 0) s.precision = static_cast<double>(overlap) / cand_total;
  if (ref_total > 0) s.recall = static_cast<double>(overlap) / ref_total;
  if (overlap > 0) {
    s.f1 = 2.0 * static_cast<double>(overlap) /
           static_cast<double>(cand_total + ref_total);
  }
  return s;
}

template <typename PerReference>
RougeScore score_references(const std::vector<std::string>& references,
                            PerReference per_reference) {
  if (references.empty()) throw Error("ROUGE needs at least one reference");
  RougeScore score;
  for (const std::string& ref : references) {
    score.per_reference.push_back(per_reference(metric_tokens(ref)));
  }
  for (const PRF& s : score.per_reference) {
    score.mean.precision += s.precision;
    score.mean.recall += s.recall;
    score.mean.f1 += s.f1;
  }
  const double n = static_cast<double>(score.per_reference.size());
  score.mean.precision /= n;
  score.mean.recall /= n;
  score.mean.f1 /= n;
  return score;
}

std::size_t lcs_length(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Counts skip_units(const std::vector<std::string>& tokens, std::size_t max_gap) {
  Counts units = ngram_counts(tokens, 1);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = i + 1; j < tokens.size() && j - i - 1 <= max_gap; ++j) {
      // The empty middle element keeps pairs distinct from real bigrams.
      ++units[{tokens[i], "", tokens[j]}];
    }
  }
  return units;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::vector<std::string> metric_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) {
      flush();
    } else if (u < 0x80 && std::ispunct(u)) {
      continue;
    } else {
      cur += static_cast<char>(u < 0x80 ? std::tolower(u) : u);
    }
  }
  flush();
  return tokens;
}

RougeScore rouge_n(std::string_view candidate,
                   const std::vector<std::string>& references, std::size_t n) {
  if (n == 0) throw Error("ROUGE-N needs n >= 1");
  const Counts cand = ngram_counts(metric_tokens(candidate), n);
  const std::size_t cand_total = total(cand);
  return score_references(references, [&](const std::vector<std::string>& ref) {
    const Counts r = ngram_counts(ref, n);
    return from_counts(clipped_overlap(cand, r), cand_total, total(r));
  });
}

RougeScore rouge_l(std::string_view candidate,
                   const std::vector<std::string>& references) {
  const auto cand = metric_tokens(candidate);
  return score_references(references, [&](const std::vector<std::string>& ref) {
    return from_counts(lcs_length(cand, ref), cand.size(), ref.size());
  });
}

RougeScore rouge_su(std::string_view candidate,
                    const std::vector<std::string>& references,
                    std::size_t max_gap) {
  const Counts cand = skip_units(metric_tokens(candidate), max_gap);
  const std::size_t cand_total = total(cand);
  return score_references(references, [&](const std::vector<std::string>& ref) {
    const Counts r = skip_units(ref, max_gap);
    return from_counts(clipped_overlap(cand, r), cand_total, total(r));
  });
}

double bleu4(std::string_view candidate,
             const std::vector<std::string>& references, double epsilon) {
  if (references.empty()) throw Error("BLEU needs at least one reference");
  const auto cand = metric_tokens(candidate);
  if (cand.empty()) return 0.0;
  std::vector<std::vector<std::string>> refs;
  for (const auto& r : references) refs.push_back(metric_tokens(r));

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const Counts c = ngram_counts(cand, n);
    Counts max_ref;
    for (const auto& r : refs) {
      for (const auto& [gram, count] : ngram_counts(r, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    const std::size_t clipped = clipped_overlap(c, max_ref);
    const double denom = static_cast<double>(std::max<std::size_t>(total(c), 1));
    const double numer = clipped > 0 ? static_cast<double>(clipped) : epsilon;
    log_sum += std::log(numer / denom);
  }

  const std::size_t c_len = cand.size();
  std::size_t r_len = refs.front().size();
  for (const auto& r : refs) {
    const auto diff = [&](std::size_t len) {
      return len > c_len ? len - c_len : c_len - len;
    };
    if (diff(r.size()) < diff(r_len) ||
        (diff(r.size()) == diff(r_len) && r.size() < r_len)) {
      r_len = r.size();
    }
  }
  const double bp = c_len > r_len
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(r_len) /
                                             static_cast<double>(c_len));
  return std::clamp(bp * std::exp(log_sum / 4.0), 0.0, 1.0);
}

EvaluationReport evaluate_summary(std::string_view candidate,
                                  const std::vector<std::string>& references,
                                  const std::vector<std::string>& reference_names) {
  if (references.empty()) throw Error("evaluation needs at least one reference");
  EvaluationReport report;
  for (std::size_t i = 0; i < references.size(); ++i) {
    const std::vector<std::string> one{references[i]};
    ReferenceScores s;
    s.reference = i < reference_names.size() ? reference_names[i]
                                              : "reference_" + std::to_string(i);
    s.rouge1_f1 = rouge_n(candidate, one, 1).mean.f1;
    s.rouge2_f1 = rouge_n(candidate, one, 2).mean.f1;
    s.rougeL_f1 = rouge_l(candidate, one).mean.f1;
    s.rougeSU4_f1 = rouge_su(candidate, one, 4).mean.f1;
    s.bleu4 = bleu4(candidate, one);
    report.per_reference.push_back(std::move(s));
  }
  const double n = static_cast<double>(references.size());
  for (const auto& s : report.per_reference) {
    report.rouge1_f1 += s.rouge1_f1 / n;
    report.rouge2_f1 += s.rouge2_f1 / n;
    report.rougeL_f1 += s.rougeL_f1 / n;
    report.rougeSU4_f1 += s.rougeSU4_f1 / n;
    report.bleu4 += s.bleu4 / n;
  }
  return report;
}

double preference_chi_square(const PreferenceCounts& counts, bool yates) {
  const double a = static_cast<double>(counts.prefer_system);
  const double b = static_cast<double>(counts.prefer_human);
  if (a + b == 0.0) throw Error("chi-square needs at least one judgment");
  double diff = std::abs(a - b);
  if (yates) diff = std::max(0.0, diff - 1.0);
  return diff * diff / (a + b);
}

double chi_square_p_value_df1(double statistic) {
  if (statistic <= 0.0) return 1.0;
  return std::erfc(std::sqrt(statistic / 2.0));
}

double cohens_kappa(const AnnotationPairs& pairs) {
  if (pairs.empty()) throw Error("kappa needs at least one annotation pair");
  std::map<std::string, double> first, second;
  double agree = 0.0;
  for (const auto& [a, b] : pairs) {
    first[a] += 1.0;
    second[b] += 1.0;
    if (a == b) agree += 1.0;
  }
  const double n = static_cast<double>(pairs.size());
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [label, count] : first) {
    auto it = second.find(label);
    if (it != second.end()) p_e += (count / n) * (it->second / n);
  }
  if (p_e >= 1.0) {
    if (p_o >= 1.0) return 1.0;
    throw Error("kappa is undefined when expected agreement is 1");
  }
  return (p_o - p_e) / (1.0 - p_e);
}

std::vector<Annotation> read_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read annotations " + path.string());
  std::vector<Annotation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (line_no == 1 && fields.size() == 3 && fields[0] == "item_id" &&
        fields[1] == "annotator" && fields[2] == "label") {
      continue;
    }
    if (fields.size() != 3) {
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": expected item_id,annotator,label");
    }
    out.push_back({fields[0], fields[1], fields[2]});
  }
  return out;
}

AnnotationPairs annotation_pairs(const std::vector<Annotation>& annotations,
                                 Warnings* warnings) {
  std::map<std::string, std::map<std::string, std::string>> by_item;
  for (const Annotation& a : annotations) {
    if (!by_item[a.item_id].emplace(a.annotator, a.label).second) {
      warn(warnings, "annotations: item '" + a.item_id + "' labelled twice by '" +
                         a.annotator + "', first label kept");
    }
  }
  AnnotationPairs pairs;
  for (const auto& [item, labels] : by_item) {
    if (labels.size() != 2) {
      warn(warnings, "annotations: item '" + item + "' has " +
                         std::to_string(labels.size()) +
                         " annotators, skipped for kappa");
      continue;
    }
    pairs.emplace_back(labels.begin()->second, std::next(labels.begin())->second);
  }
  return pairs;
}

PreferenceCounts preference_counts(const std::vector<Annotation>& annotations,
                                   Warnings* warnings) {
  PreferenceCounts counts;
  for (const Annotation& a : annotations) {
    std::string label = a.label;
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (label == "system") {
      ++counts.prefer_system;
    } else if (label == "human") {
      ++counts.prefer_human;
    } else {
      warn(warnings, "annotations: label '" + a.label + "' of item '" + a.item_id +
                         "' is neither system nor human");
    }
  }
  return counts;
}

std::vector<EvalBatchItem> read_eval_batch(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read evaluation batch " + path.string());
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  std::vector<EvalBatchItem> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) throw Error(where + ": invalid JSON");
    try {
      EvalBatchItem item;
      item.summary_id = j.at("summary_id").get<std::string>();
      item.candidate_path = resolve(j.at("candidate_path").get<std::string>());
      for (const auto& r : j.at("reference_paths")) {
        item.reference_paths.push_back(resolve(r.get<std::string>()));
      }
      if (j.contains("system")) item.system = j["system"].get<std::string>();
      if (item.reference_paths.empty()) throw Error("no reference_paths");
      items.push_back(std::move(item));
    } catch (const nlohmann::json::exception& e) {
      throw Error(where + ": " + e.what());
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
  }
  return items;
}

std::vector<EvalRow> evaluate_batch(const std::vector<EvalBatchItem>& items,
                                    unsigned threads, Warnings* warnings) {
  std::vector<std::optional<EvalRow>> slots(items.size());
  std::vector<std::string> problems(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) {
    const EvalBatchItem& item = items[i];
    std::error_code ec;
    if (!std::filesystem::is_regular_file(item.candidate_path, ec)) {
      problems[i] = "evaluate: candidate " + item.candidate_path.string() +
                    " missing, row '" + item.summary_id + "' skipped";
      return;
    }
    std::vector<std::string> refs, names;
    for (const auto& r : item.reference_paths) {
      if (!std::filesystem::is_regular_file(r, ec)) {
        problems[i] = "evaluate: reference " + r.string() + " missing, row '" +
                      item.summary_id + "' skipped";
        return;
      }
      refs.push_back(read_text(r));
      names.push_back(r.filename().string());
    }
    slots[i] = EvalRow{item, evaluate_summary(read_text(item.candidate_path), refs, names)};
  });
  std::vector<EvalRow> rows;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!problems[i].empty()) warn(warnings, problems[i]);
    if (slots[i]) rows.push_back(std::move(*slots[i]));
  }
  return rows;
}

std::string evaluation_csv(const std::vector<EvalRow>& rows) {
  std::string out =
      "summary_id,system,references,rouge1_f1,rouge2_f1,rougeL_f1,rougeSU4_f1,bleu4\n";
  struct Sum {
    double r1 = 0, r2 = 0, rl = 0, rsu = 0, bleu = 0;
    std::size_t n = 0;
  };
  std::map<std::string, Sum> by_system;
  for (const EvalRow& row : rows) {
    const EvaluationReport& r = row.report;
    out += csv_field(row.item.summary_id) + "," + csv_field(row.item.system) + "," +
           std::to_string(r.per_reference.size()) + "," + fmt(r.rouge1_f1) + "," +
           fmt(r.rouge2_f1) + "," + fmt(r.rougeL_f1) + "," + fmt(r.rougeSU4_f1) +
           "," + fmt(r.bleu4) + "\n";
    Sum& s = by_system[row.item.system];
    s.r1 += r.rouge1_f1;
    s.r2 += r.rouge2_f1;
    s.rl += r.rougeL_f1;
    s.rsu += r.rougeSU4_f1;
    s.bleu += r.bleu4;
    ++s.n;
  }
  for (const auto& [system, s] : by_system) {
    const double n = static_cast<double>(s.n);
    out += "MEAN," + csv_field(system) + "," + std::to_string(s.n) + "," +
           fmt(s.r1 / n) + "," + fmt(s.r2 / n) + "," + fmt(s.rl / n) + "," +
           fmt(s.rsu / n) + "," + fmt(s.bleu / n) + "\n";
  }
  return out;
}

std::string evaluation_breakdown_csv(const std::vector<EvalRow>& rows) {
  std::string out =
      "summary_id,system,reference,rouge1_f1,rouge2_f1,rougeL_f1,rougeSU4_f1,bleu4\n";
  for (const EvalRow& row : rows) {
    for (const ReferenceScores& s : row.report.per_reference) {
      out += csv_field(row.item.summary_id) + "," + csv_field(row.item.system) + "," +
             csv_field(s.reference) + "," + fmt(s.rouge1_f1) + "," +
             fmt(s.rouge2_f1) + "," + fmt(s.rougeL_f1) + "," + fmt(s.rougeSU4_f1) +
             "," + fmt(s.bleu4) + "\n";
    }
  }
  return out;
}

}  // namespace riskmine
