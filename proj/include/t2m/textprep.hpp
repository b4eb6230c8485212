// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "t2m/corpus.hpp"

namespace t2m::textprep {

// ---- tokenization / tagging primitives ----

std::vector<std::string> tokenize_sentences(const std::string& text);
std::vector<std::string> tokenize_words(const std::string& sentence);

// Deterministic rule tagger over the Penn Treebank tagset.
std::vector<std::string> pos_tag(const std::vector<std::string>& tokens);

// Lowercase lemma for a (token, tag) pair.
std::string lemmatize(const std::string& token, const std::string& tag);

const std::set<std::string>& stopwords();

// ---- spelling correction ----

struct WordFrequencyModel {
  std::map<std::string, long> counts;
  long total = 0;
  bool known(const std::string& w) const { return counts.count(w) > 0; }
  double p(const std::string& w) const {
    auto it = counts.find(w);
    return (it == counts.end() || total == 0) ? 0.0 : double(it->second) / double(total);
  }
};

WordFrequencyModel build_language_model(const std::vector<std::string>& texts);

// All strings at Damerau-Levenshtein distance <= `distance` from `word`
// over alphabet a-z (the word itself excluded).
std::set<std::string> candidate_edits(const std::string& word, int distance);

struct Correction {
  std::string corrected;
  bool changed = false;
};

Correction correct_word(const std::string& word, const WordFrequencyModel& model);

// ---- coreference ----

class CoreferenceResolver {
 public:
  virtual ~CoreferenceResolver() = default;
  // Returns the resolved text (token-substituted), or nullopt on failure.
  virtual std::optional<std::string> resolve(const std::string& text) = 0;
};

// Deterministic stub: a pronoun resolves to the head noun of the first noun
// phrase of its sentence (or of the previous sentence when no noun precedes).
class RuleCoreferenceResolver : public CoreferenceResolver {
 public:
  std::optional<std::string> resolve(const std::string& text) override;
};

corpus::Document resolve_coreferences(const corpus::Document& doc, CoreferenceResolver& resolver);

// ---- preprocessing ----

struct TaggedToken {
  std::string text;
  std::string pos_tag;
  std::string lemma;
  bool is_stopword = false;
};

struct Sentence {
  int index = 0;
  std::string original;
  std::vector<TaggedToken> tokens;
};

struct PreprocessedDocument {
  std::string doc_id;
  std::vector<Sentence> sentences;
  std::vector<std::string> noun_lemmas;
};

PreprocessedDocument preprocess_document(const corpus::Document& doc,
                                         const std::set<std::string>& stoplist = stopwords());

// Lemmas of non-stopword word tokens of one sentence (the final
// preprocessing stage).
std::vector<std::string> filtered_lemmas(const Sentence& s);

struct SpellingSubstitution {
  std::string doc_id;
  int sentence_index = 0;
  std::string original;
  std::string corrected;
};

// Correct every lowercase alphabetic token; hyphenated words are corrected
// part-by-part. Returns the corrected document and logs substitutions.
corpus::Document correct_document(const corpus::Document& doc, const WordFrequencyModel& model,
                                  std::vector<SpellingSubstitution>* log = nullptr);

}  // namespace t2m::textprep
