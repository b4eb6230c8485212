// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/semantics.hpp"

#include <algorithm>

#include "t2m/textprep.hpp"
#include "t2m/util.hpp"

namespace t2m::semantics {

static int raw_depth(const std::string& lemma, const LexDB& db) {
  auto syn = db.first_noun_synset(lemma);
  return syn ? db.depth(*syn) : -1;
}

std::map<std::string, DepthScore> depth_scores(const std::set<std::string>& lemmas,
                                               const std::set<std::string>& doc_vocab,
                                               const LexDB& db) {
  int max_depth = 0;
  for (const auto& w : doc_vocab) max_depth = std::max(max_depth, raw_depth(w, db));
  std::map<std::string, DepthScore> out;
  for (const auto& w : lemmas) {
    DepthScore ds;
    ds.word = w;
    int d = raw_depth(w, db);
    ds.h = (d < 0 || max_depth == 0) ? 0.0 : double(d) / double(max_depth);
    ds.h_complement = 1.0 - ds.h;
    out[w] = ds;
  }
  return out;
}

// Head verb of a relation phrase: skip auxiliaries/adverbs/negation, take the
// first remaining verb-like token, lemmatize, and append a following particle.
static std::string head_verb_lemma(const std::string& phrase) {
  static const std::set<std::string> skip = {"is",  "am",   "are", "was",  "were", "be",
                                             "been", "being", "has", "have", "had",  "having",
                                             "not", "n't",  "will", "would", "can",  "could",
                                             "may", "might", "must", "shall", "should", "to"};
  static const std::set<std::string> particles = {"up", "of", "out", "in", "together"};
  auto toks = textprep::tokenize_words(phrase);
  auto tags = textprep::pos_tag(toks);
  for (size_t i = 0; i < toks.size(); ++i) {
    std::string low = to_lower(toks[i]);
    if (skip.count(low)) continue;
    if (!is_alpha_word(toks[i])) continue;
    if (tags[i].rfind("RB", 0) == 0) continue;
    std::string lemma = textprep::lemmatize(toks[i], "VB");
    if (i + 1 < toks.size() && particles.count(to_lower(toks[i + 1])))
      return lemma + "_" + to_lower(toks[i + 1]);
    return lemma;
  }
  return "";
}

bool is_composite_relation(const std::string& relation_phrase,
                           const std::vector<std::string>& synset_ids, const LexDB& db) {
  std::string head = head_verb_lemma(relation_phrase);
  if (head.empty()) return false;
  std::string bare = head.substr(0, head.find('_'));
  for (const auto& sid : synset_ids) {
    const Synset* s = db.get(sid);
    if (!s) continue;
    for (const auto& l : s->lemmas)
      if (l == head || l == bare) return true;
  }
  return false;
}

TaxonomyLinks taxonomy_links(const std::string& word_a, const std::string& word_b,
                             const LexDB& db) {
  TaxonomyLinks out;
  auto sa = db.first_noun_synset(word_a);
  auto sb = db.first_noun_synset(word_b);
  if (!sa || !sb || *sa == *sb) return out;
  auto anc_a = db.ancestors(*sa);
  auto anc_b = db.ancestors(*sb);
  if (std::find(anc_a.begin(), anc_a.end(), *sb) != anc_a.end())
    out.generalization = "a_specializes_b";
  else if (std::find(anc_b.begin(), anc_b.end(), *sa) != anc_b.end())
    out.generalization = "b_specializes_a";
  const Synset* syn_a = db.get(*sa);
  const Synset* syn_b = db.get(*sb);
  auto has_holonym = [&](const Synset* part, const std::string& whole) {
    return std::find(part->holonyms.begin(), part->holonyms.end(), whole) != part->holonyms.end();
  };
  if (has_holonym(syn_a, *sb))
    out.composite = "a_part_of_b";
  else if (has_holonym(syn_b, *sa))
    out.composite = "b_part_of_a";
  return out;
}

std::optional<std::string> lowest_common_hypernym(const std::set<std::string>& words,
                                                  const LexDB& db) {
  if (words.size() < 2) {
    if (words.size() == 1) {
      auto s = db.first_noun_synset(*words.begin());
      if (s) {
        const Synset* syn = db.get(*s);
        return syn->lemmas.front();
      }
    }
    return std::nullopt;
  }
  std::set<std::string> shared;
  bool first = true;
  for (const auto& w : words) {
    auto syn = db.first_noun_synset(w);
    if (!syn) return std::nullopt;
    auto chain = db.ancestors(*syn);
    std::set<std::string> cs(chain.begin(), chain.end());
    if (first) {
      shared = cs;
      first = false;
    } else {
      std::set<std::string> inter;
      std::set_intersection(shared.begin(), shared.end(), cs.begin(), cs.end(),
                            std::inserter(inter, inter.begin()));
      shared = inter;
    }
  }
  const Synset* best = nullptr;
  int best_depth = -1;
  for (const auto& id : shared) {
    int d = db.depth(id);
    if (d > best_depth) {
      best_depth = d;
      best = db.get(id);
    }
  }
  if (!best) return std::nullopt;
  return best->lemmas.front();
}

}  // namespace t2m::semantics
