// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/kgraph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "t2m/semantics.hpp"
#include "t2m/util.hpp"

#ifndef T2M_DATA_DIR
#define T2M_DATA_DIR "data"
#endif

namespace t2m::kgraph {

std::string Phrase::text() const { return join(words, " "); }

const Phrase* KnowledgeGraph::node(const std::string& text) const {
  for (const auto& p : nodes)
    if (p.text() == text) return &p;
  return nullptr;
}

const std::set<std::string>& unit_lexicon() {
  static const std::set<std::string> u = [] {
    std::set<std::string> s;
    std::istringstream in(read_file(std::string(T2M_DATA_DIR) + "/units.txt"));
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) s.insert(line);
    }
    return s;
  }();
  return u;
}

CorpusIndex build_corpus_index(const std::vector<textprep::PreprocessedDocument>& docs) {
  CorpusIndex idx;
  idx.doc_count = (int)docs.size();
  for (const auto& d : docs) {
    std::set<std::string> seen(d.noun_lemmas.begin(), d.noun_lemmas.end());
    for (const auto& w : seen) idx.docs_containing[w]++;
  }
  return idx;
}

// Word-token lemma frequency and word-token total for one document.
static void doc_counts(const textprep::PreprocessedDocument& doc, const std::string& word,
                       long& f, long& n_d) {
  f = 0;
  n_d = 0;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (t.text.empty() || !std::isalnum((unsigned char)t.text[0])) continue;
      ++n_d;
      if (t.lemma == word) ++f;
    }
}

double tfidf(const std::string& word, const textprep::PreprocessedDocument& doc,
             const CorpusIndex& index) {
  long f = 0, n_d = 0;
  doc_counts(doc, word, f, n_d);
  if (f == 0) throw std::invalid_argument("tfidf: word absent from document: " + word);
  int n_wc = 0;
  if (auto it = index.docs_containing.find(word); it != index.docs_containing.end())
    n_wc = it->second;
  double tf = std::log10(double(f) / double(n_d));
  double idf = std::log10(double(index.doc_count) / double(1 + n_wc)) + 1.0;
  return tf * idf;
}

KeyNounResult extract_key_nouns(const textprep::PreprocessedDocument& doc,
                                const CorpusIndex& index, double sigma_tfidf) {
  KeyNounResult out;
  std::set<std::string> distinct(doc.noun_lemmas.begin(), doc.noun_lemmas.end());
  if (distinct.empty()) return out;
  std::vector<KeyNoun> all;
  double max_score = -1e300, max_abs = 0.0;
  for (const auto& w : distinct) {
    KeyNoun k;
    k.lemma = w;
    k.tfidf = tfidf(w, doc, index);
    max_score = std::max(max_score, k.tfidf);
    max_abs = std::max(max_abs, std::fabs(k.tfidf));
    all.push_back(std::move(k));
  }
  if (max_score > 0) {
    for (auto& k : all) k.tfidf_norm = k.tfidf / max_score;
  } else {
    // All raw tf-idf scores are <= 0: normalize by the maximum magnitude instead.
    out.all_nonpositive = true;
    for (auto& k : all) k.tfidf_norm = max_abs == 0 ? 1.0 : std::fabs(k.tfidf) / max_abs;
  }
  for (auto& k : all)
    if (k.tfidf_norm > sigma_tfidf) out.nouns.push_back(k);
  return out;
}

// ---------- pattern relation extraction ----------

static bool is_verb_tag(const std::string& t) { return t.rfind("VB", 0) == 0 || t == "MD"; }

std::vector<RelationTriple> PatternRelationExtractor::extract(const std::string& sentence,
                                                              const SentenceRef& ref) {
  std::vector<RelationTriple> out;
  auto toks = textprep::tokenize_words(sentence);
  auto tags = textprep::pos_tag(toks);
  size_t n = toks.size();

  // verb groups: [start, end) runs of MD/VB*/RB, beginning at MD/VB* or TO+VB
  std::vector<std::pair<size_t, size_t>> groups;
  for (size_t i = 0; i < n;) {
    bool to_vb = tags[i] == "TO" && i + 1 < n && tags[i + 1].rfind("VB", 0) == 0;
    if (is_verb_tag(tags[i]) || to_vb) {
      size_t j = i + (to_vb ? 1 : 0);
      while (j < n && (is_verb_tag(tags[j]) || tags[j] == "RB" || tags[j] == "TO")) ++j;
      groups.emplace_back(i, j);
      i = j;
    } else {
      ++i;
    }
  }

  auto is_np_tag = [](const std::string& t) {
    return t.rfind("NN", 0) == 0 || t == "PRP" || t == "CD";
  };
  auto is_np_inner = [&](const std::string& t) {
    return is_np_tag(t) || t == "JJ" || t == "DT" || t == "POS" || t == "RBR";
  };

  for (size_t g = 0; g < groups.size(); ++g) {
    auto [vs, ve] = groups[g];
    // subject: nearest preceding NP head, extended left
    std::string subject;
    for (size_t i = vs; i-- > 0;) {
      if (is_np_tag(tags[i])) {
        size_t start = i;
        while (start > 0 && is_np_inner(tags[start - 1])) --start;
        std::vector<std::string> parts(toks.begin() + start, toks.begin() + i + 1);
        subject = join(parts, " ");
        break;
      }
      if (tags[i] == "." || tags[i] == ",") break;
    }
    // relation: the verb group, plus a passive/complement preposition
    size_t rel_end = ve;
    std::vector<std::string> rel_toks(toks.begin() + vs, toks.begin() + ve);
    if (ve < n && (tags[ve] == "IN" || tags[ve] == "TO") && to_lower(toks[ve]) != "of" &&
        !rel_toks.empty() && tags[ve - 1].rfind("VB", 0) == 0) {
      rel_toks.push_back(toks[ve]);
      rel_end = ve + 1;
    }
    std::string relation = join(rel_toks, " ");
    // object: span to the next verb group / clause boundary
    size_t limit = g + 1 < groups.size() ? groups[g + 1].first : n;
    std::vector<std::string> obj_toks;
    for (size_t i = rel_end; i < limit; ++i) {
      if (tags[i] == "." || tags[i] == "," || tags[i] == ":" || tags[i] == "CC") break;
      obj_toks.push_back(toks[i]);
    }
    // strip a leading preposition/determiner-only object noise
    while (!obj_toks.empty() && to_lower(obj_toks.front()) == "of") obj_toks.erase(obj_toks.begin());
    std::string object = join(obj_toks, " ");
    if (subject.empty()) continue;
    RelationTriple t;
    t.subject = subject;
    t.relation = relation;
    t.object = object;
    t.confidence = object.empty() ? 0.6 : 1.0;
    t.sentence_ref = ref;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<RelationTriple> extract_relations(const std::vector<std::string>& sentences,
                                              const std::string& doc_id,
                                              RelationExtractor& backend,
                                              double sigma_relationship) {
  std::vector<RelationTriple> out;
  for (size_t i = 0; i < sentences.size(); ++i) {
    std::vector<RelationTriple> ts;
    try {
      ts = backend.extract(sentences[i], {doc_id, (int)i});
    } catch (const std::exception& e) {
      fprintf(stderr, "warning: relation extraction failed on sentence %zu: %s\n", i, e.what());
      continue;
    }
    for (auto& t : ts)
      if (t.confidence >= sigma_relationship) out.push_back(std::move(t));
  }
  return out;
}

// ---------- key phrases ----------

std::vector<std::string> normalize_phrase(const std::string& phrase,
                                          const std::map<std::string, KeyNoun>& nouns,
                                          const textprep::PreprocessedDocument& doc,
                                          const CorpusIndex& index, int l_phrase) {
  (void)doc;
  (void)index;
  auto toks = textprep::tokenize_words(phrase);
  auto tags = textprep::pos_tag(toks);
  std::vector<std::string> words;
  for (size_t i = 0; i < toks.size(); ++i) {
    std::string lemma = textprep::lemmatize(toks[i], tags[i]);
    if (nouns.count(lemma)) words.push_back(lemma);
  }
  while ((int)words.size() > l_phrase) {
    size_t worst = 0;
    double worst_score = 1e300;
    for (size_t i = 0; i < words.size(); ++i) {
      double s = nouns.at(words[i]).tfidf_norm;
      if (s < worst_score) {
        worst_score = s;
        worst = i;
      }
    }
    words.erase(words.begin() + worst);
  }
  return words;
}

// Contiguous occurrences of `words` in the document's per-sentence noun-lemma
// streams; at least 1.
static int phrase_count(const std::vector<std::string>& words,
                        const textprep::PreprocessedDocument& doc) {
  if (words.empty()) return 0;
  int count = 0;
  for (const auto& s : doc.sentences) {
    std::vector<std::string> stream;
    for (const auto& t : s.tokens)
      if (t.pos_tag.rfind("NN", 0) == 0 && !t.is_stopword) stream.push_back(t.lemma);
    for (size_t i = 0; i + words.size() <= stream.size(); ++i) {
      bool ok = true;
      for (size_t j = 0; j < words.size(); ++j)
        if (stream[i + j] != words[j]) {
          ok = false;
          break;
        }
      if (ok) ++count;
    }
  }
  return std::max(count, 1);
}

std::vector<Phrase> select_key_phrases(const std::vector<RelationTriple>& triples,
                                       const std::vector<KeyNoun>& key_nouns,
                                       const textprep::PreprocessedDocument& doc,
                                       const CorpusIndex& index, int l_phrase, double sigma_p,
                                       const std::set<std::string>& units) {
  std::map<std::string, KeyNoun> nouns;
  for (const auto& k : key_nouns) nouns[k.lemma] = k;

  std::set<std::string> doc_vocab(doc.noun_lemmas.begin(), doc.noun_lemmas.end());
  std::set<std::string> all_words;
  std::vector<std::vector<std::string>> candidates;
  std::set<std::string> seen;
  for (const auto& t : triples)
    for (const std::string* side : {&t.subject, &t.object}) {
      if (side->empty()) continue;
      auto words = normalize_phrase(*side, nouns, doc, index, l_phrase);
      if (words.empty()) continue;
      bool all_units = true;
      for (const auto& w : words)
        if (!units.count(w)) all_units = false;
      if (all_units) continue;
      std::string key = join(words, " ");
      if (seen.count(key)) continue;
      seen.insert(key);
      for (const auto& w : words) all_words.insert(w);
      candidates.push_back(std::move(words));
    }

  auto depths = semantics::depth_scores(all_words, doc_vocab);
  std::vector<Phrase> out;
  for (auto& words : candidates) {
    Phrase p;
    p.count = phrase_count(words, doc);
    double mean_tfidf = 0, mean_h = 0;
    for (const auto& w : words) {
      mean_tfidf += nouns.at(w).tfidf_norm;
      mean_h += depths.at(w).h_complement;
    }
    mean_tfidf /= words.size();
    mean_h /= words.size();
    p.words = std::move(words);
    p.importance = mean_tfidf + mean_h + p.count;
    if (p.importance > sigma_p) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(),
            [](const Phrase& a, const Phrase& b) { return a.text() < b.text(); });
  return out;
}

KnowledgeGraph select_key_relationships(const std::vector<RelationTriple>& triples,
                                        const std::vector<Phrase>& key_phrases,
                                        const std::vector<KeyNoun>& key_nouns, int l_phrase) {
  std::map<std::string, KeyNoun> nouns;
  for (const auto& k : key_nouns) nouns[k.lemma] = k;
  KnowledgeGraph g;
  g.nodes = key_phrases;
  std::set<std::string> node_texts;
  for (const auto& p : key_phrases) node_texts.insert(p.text());
  textprep::PreprocessedDocument dummy;
  CorpusIndex dummy_idx;
  for (const auto& t : triples) {
    if (t.object.empty()) continue;
    auto s_words = normalize_phrase(t.subject, nouns, dummy, dummy_idx, l_phrase);
    auto o_words = normalize_phrase(t.object, nouns, dummy, dummy_idx, l_phrase);
    std::string s = join(s_words, " "), o = join(o_words, " ");
    if (s.empty() || o.empty() || !node_texts.count(s) || !node_texts.count(o)) continue;
    g.edges.push_back({s, t.relation, o, t.confidence, t.sentence_ref});
  }
  return g;
}

std::map<std::string, double> gamma_scores(const std::vector<KeyNoun>& nouns,
                                           const textprep::PreprocessedDocument& doc) {
  std::set<std::string> words;
  for (const auto& k : nouns) words.insert(k.lemma);
  std::set<std::string> vocab(doc.noun_lemmas.begin(), doc.noun_lemmas.end());
  auto depths = semantics::depth_scores(words, vocab);
  std::map<std::string, double> out;
  for (const auto& k : nouns) out[k.lemma] = k.tfidf_norm + depths.at(k.lemma).h_complement;
  return out;
}

}  // namespace t2m::kgraph
