// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>

#include "t2m/textprep.hpp"
#include "t2m/util.hpp"

namespace t2m::textprep {

WordFrequencyModel build_language_model(const std::vector<std::string>& texts) {
  WordFrequencyModel m;
  for (const auto& text : texts) {
    std::string cur;
    for (char c : text) {
      if (std::isalpha((unsigned char)c)) {
        cur.push_back(char(std::tolower((unsigned char)c)));
      } else if (!cur.empty()) {
        m.counts[cur]++;
        m.total++;
        cur.clear();
      }
    }
    if (!cur.empty()) {
      m.counts[cur]++;
      m.total++;
    }
  }
  if (m.total == 0) throw std::runtime_error("language model: empty token stream");
  return m;
}

static void edits1_into(const std::string& w, std::set<std::string>& out) {
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  size_t n = w.size();
  for (size_t i = 0; i < n; ++i) out.insert(w.substr(0, i) + w.substr(i + 1));  // deletions
  for (size_t i = 0; i + 1 < n; ++i) {                                         // transpositions
    std::string t = w;
    std::swap(t[i], t[i + 1]);
    out.insert(t);
  }
  for (size_t i = 0; i < n; ++i)  // replacements
    for (char c : alphabet) {
      std::string t = w;
      t[i] = c;
      out.insert(t);
    }
  for (size_t i = 0; i <= n; ++i)  // insertions
    for (char c : alphabet) out.insert(w.substr(0, i) + c + w.substr(i));
}

std::set<std::string> candidate_edits(const std::string& word, int distance) {
  if (word.empty()) throw std::invalid_argument("candidate_edits: empty word");
  std::set<std::string> e1;
  edits1_into(word, e1);
  e1.erase(word);
  if (distance <= 1) return e1;
  std::set<std::string> e2 = e1;
  for (const auto& e : e1) edits1_into(e, e2);
  e2.erase(word);
  return e2;
}

Correction correct_word(const std::string& word, const WordFrequencyModel& model) {
  if (word.empty() || model.known(word)) return {word, false};
  auto pick = [&](const std::set<std::string>& cands) -> std::string {
    std::string best;
    long best_count = -1;
    for (const auto& c : cands) {
      auto it = model.counts.find(c);
      if (it == model.counts.end()) continue;
      if (it->second > best_count) {  // set iteration is sorted: ties keep the smaller word
        best_count = it->second;
        best = c;
      }
    }
    return best;
  };
  std::set<std::string> e1;
  edits1_into(word, e1);
  e1.erase(word);
  if (std::string b = pick(e1); !b.empty()) return {b, true};
  std::set<std::string> e2;
  for (const auto& e : e1) edits1_into(e, e2);
  e2.erase(word);
  if (std::string b = pick(e2); !b.empty()) return {b, true};
  return {word, false};  // P(c|w) = 0 everywhere: leave as-is
}

corpus::Document correct_document(const corpus::Document& doc, const WordFrequencyModel& model,
                                  std::vector<SpellingSubstitution>* log) {
  auto sentences = tokenize_sentences(doc.raw_text);
  bool any = false;
  std::vector<std::string> fixed;
  fixed.reserve(sentences.size());
  for (size_t si = 0; si < sentences.size(); ++si) {
    std::string out;
    const std::string& s = sentences[si];
    size_t i = 0;
    while (i < s.size()) {
      if (!std::isalpha((unsigned char)s[i])) {
        out.push_back(s[i++]);
        continue;
      }
      size_t j = i;
      while (j < s.size() && std::isalpha((unsigned char)s[j])) ++j;
      std::string part = s.substr(i, j - i);
      std::string low = to_lower(part);
      if (part.size() >= 3 && low == part && !model.known(low)) {
        auto corr = correct_word(low, model);
        if (corr.changed) {
          if (log) log->push_back({doc.id, (int)si, part, corr.corrected});
          part = corr.corrected;
          any = true;
        }
      }
      out += part;
      i = j;
    }
    fixed.push_back(out);
  }
  if (!any) return doc;
  corpus::Document d = doc;
  d.raw_text = join(fixed, " ");
  d.word_count = corpus::whitespace_token_count(d.raw_text);
  return d;
}

}  // namespace t2m::textprep
