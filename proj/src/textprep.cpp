// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/textprep.hpp"

#include <cctype>
#include <iostream>
#include <regex>

#include "t2m/util.hpp"

namespace t2m::textprep {

// ---------- coreference ----------

// Head noun of the first noun phrase of a tagged sentence: the last noun of
// the first contiguous noun run. want_plural selects the nearest NNS instead.
static std::string first_np_head(const std::vector<std::string>& toks,
                                 const std::vector<std::string>& tags, size_t before,
                                 bool want_plural) {
  for (size_t i = 0; i < before && i < toks.size(); ++i) {
    bool noun = tags[i].rfind("NN", 0) == 0;
    if (!noun) continue;
    if (want_plural && tags[i] != "NNS" && tags[i] != "NNPS") continue;
    size_t j = i;
    while (j + 1 < toks.size() && j + 1 < before && tags[j + 1].rfind("NN", 0) == 0 &&
           (!want_plural || tags[j + 1] == "NNS" || tags[j + 1] == "NNPS"))
      ++j;
    return to_lower(toks[j]);
  }
  return "";
}

std::optional<std::string> RuleCoreferenceResolver::resolve(const std::string& text) {
  static const std::set<std::string> singular = {"it", "its"};
  static const std::set<std::string> plural = {"they", "them", "their"};
  auto sentences = tokenize_sentences(text);
  std::vector<std::string> out;
  std::string prev_sentence;
  bool any = false;
  for (const auto& sent : sentences) {
    auto toks = tokenize_words(sent);
    auto tags = pos_tag(toks);
    std::string resolved = sent;
    // walk the raw sentence and substitute whole-word pronoun matches
    static const std::regex pron(R"(\b([Ii]t|[Ii]ts|[Tt]hey|[Tt]hem|[Tt]heir)\b)");
    std::string rebuilt;
    auto begin = std::sregex_iterator(resolved.begin(), resolved.end(), pron);
    size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      std::string low = to_lower(it->str());
      bool plur = plural.count(low) > 0;
      // token index of this pronoun occurrence
      size_t tok_idx = toks.size();
      size_t seen = 0;
      size_t char_pos = (size_t)it->position();
      // count pronoun tokens up to char_pos
      for (size_t k = 0, cp = 0; k < toks.size(); ++k) {
        cp = resolved.find(toks[k], cp);
        if (cp == std::string::npos) break;
        if (cp == char_pos && to_lower(toks[k]) == low) {
          tok_idx = k;
          break;
        }
        cp += toks[k].size();
        (void)seen;
      }
      std::string head = first_np_head(toks, tags, tok_idx, plur);
      if (head.empty() && !prev_sentence.empty()) {
        auto ptoks = tokenize_words(prev_sentence);
        auto ptags = pos_tag(ptoks);
        head = first_np_head(ptoks, ptags, ptoks.size(), plur);
      }
      rebuilt += resolved.substr(last, (size_t)it->position() - last);
      if (!head.empty() && head != low) {
        rebuilt += head;
        any = true;
      } else {
        rebuilt += it->str();
      }
      last = (size_t)it->position() + it->length();
    }
    rebuilt += resolved.substr(last);
    out.push_back(rebuilt);
    prev_sentence = sent;
  }
  if (!any) return text;
  return join(out, " ");
}

corpus::Document resolve_coreferences(const corpus::Document& doc,
                                      CoreferenceResolver& resolver) {
  std::optional<std::string> resolved;
  try {
    resolved = resolver.resolve(doc.raw_text);
  } catch (const std::exception& e) {
    std::cerr << "warning: coreference resolver failed (" << e.what() << "); passing through\n";
  }
  if (!resolved) {
    std::cerr << "warning: coreference resolver returned no result; passing through\n";
    return doc;
  }
  if (*resolved == doc.raw_text) return doc;
  corpus::Document d = doc;
  d.raw_text = *resolved;
  d.word_count = corpus::whitespace_token_count(d.raw_text);
  return d;
}

// ---------- preprocessing ----------

PreprocessedDocument preprocess_document(const corpus::Document& doc,
                                         const std::set<std::string>& stoplist) {
  PreprocessedDocument out;
  out.doc_id = doc.id;
  auto sentences = tokenize_sentences(doc.raw_text);
  for (size_t si = 0; si < sentences.size(); ++si) {
    Sentence s;
    s.index = (int)si;
    s.original = sentences[si];
    auto toks = tokenize_words(sentences[si]);
    auto tags = pos_tag(toks);
    for (size_t i = 0; i < toks.size(); ++i) {
      TaggedToken t;
      t.text = toks[i];
      t.pos_tag = tags[i];
      t.lemma = lemmatize(toks[i], tags[i]);
      t.is_stopword = stoplist.count(to_lower(toks[i])) > 0 || stoplist.count(t.lemma) > 0;
      if (t.pos_tag.rfind("NN", 0) == 0 && !t.is_stopword) out.noun_lemmas.push_back(t.lemma);
      s.tokens.push_back(std::move(t));
    }
    out.sentences.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> filtered_lemmas(const Sentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) {
    if (t.is_stopword) continue;
    if (t.text.empty() || !std::isalnum((unsigned char)t.text[0])) continue;
    out.push_back(t.lemma);
  }
  return out;
}

}  // namespace t2m::textprep
