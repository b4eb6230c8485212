// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "t2m/textprep.hpp"

namespace t2m::kgraph {

struct KeyNoun {
  std::string lemma;
  double tfidf = 0.0;
  double tfidf_norm = 0.0;
};

struct SentenceRef {
  std::string doc_id;
  int sentence_index = 0;
  bool operator<(const SentenceRef& o) const {
    return doc_id != o.doc_id ? doc_id < o.doc_id : sentence_index < o.sentence_index;
  }
  bool operator==(const SentenceRef& o) const = default;
};

struct RelationTriple {
  std::string subject;
  std::string relation;
  std::string object;
  double confidence = 1.0;
  SentenceRef sentence_ref;
};

struct Phrase {
  std::vector<std::string> words;  // key-noun lemmas, original order
  int count = 1;
  double importance = 0.0;
  std::string text() const;
};

struct Edge {
  std::string subject;  // phrase text
  std::string relation;
  std::string object;
  double confidence = 1.0;
  SentenceRef sentence_ref;
};

struct KnowledgeGraph {
  std::vector<Phrase> nodes;
  std::vector<Edge> edges;
  const Phrase* node(const std::string& text) const;
};

// Per-document noun-lemma statistics over the reference corpus.
struct CorpusIndex {
  int doc_count = 0;                            // N_c
  std::map<std::string, int> docs_containing;   // n_{w,c}
};

CorpusIndex build_corpus_index(const std::vector<textprep::PreprocessedDocument>& docs);

// tf-idf, implemented verbatim: log10(f/N_d) * (log10(N_c/(1+n)) + 1).
double tfidf(const std::string& word, const textprep::PreprocessedDocument& doc,
             const CorpusIndex& index);

struct KeyNounResult {
  std::vector<KeyNoun> nouns;
  bool all_nonpositive = false;  // flagged: normalized by max |tfidf|
};

KeyNounResult extract_key_nouns(const textprep::PreprocessedDocument& doc,
                                const CorpusIndex& index, double sigma_tfidf);

class RelationExtractor {
 public:
  virtual ~RelationExtractor() = default;
  virtual std::vector<RelationTriple> extract(const std::string& sentence,
                                              const SentenceRef& ref) = 0;
};

// Deterministic pattern extractor: nearest-preceding subject NP, verb group,
// trailing object span.
class PatternRelationExtractor : public RelationExtractor {
 public:
  std::vector<RelationTriple> extract(const std::string& sentence,
                                      const SentenceRef& ref) override;
};

std::vector<RelationTriple> extract_relations(const std::vector<std::string>& sentences,
                                              const std::string& doc_id,
                                              RelationExtractor& backend,
                                              double sigma_relationship);

// Phrase preprocessing + trimming + importance scoring + unit filter.
std::vector<Phrase> select_key_phrases(const std::vector<RelationTriple>& triples,
                                       const std::vector<KeyNoun>& key_nouns,
                                       const textprep::PreprocessedDocument& doc,
                                       const CorpusIndex& index, int l_phrase, double sigma_p,
                                       const std::set<std::string>& unit_lexicon);

KnowledgeGraph select_key_relationships(const std::vector<RelationTriple>& triples,
                                        const std::vector<Phrase>& key_phrases,
                                        const std::vector<KeyNoun>& key_nouns, int l_phrase);

// Maps an arbitrary phrase to its key-noun word list (preprocess, drop
// non-key-nouns, trim to l_phrase by lowest tf-idf).
std::vector<std::string> normalize_phrase(const std::string& phrase,
                                          const std::map<std::string, KeyNoun>& nouns,
                                          const textprep::PreprocessedDocument& doc,
                                          const CorpusIndex& index, int l_phrase);

const std::set<std::string>& unit_lexicon();

// Secondary importance gamma = tfidf_norm + h_complement, used by abstraction.
std::map<std::string, double> gamma_scores(const std::vector<KeyNoun>& nouns,
                                           const textprep::PreprocessedDocument& doc);

}  // namespace t2m::kgraph
