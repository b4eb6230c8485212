// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace t2m::semantics {

struct Synset {
  std::string id;
  std::string pos;
  std::vector<std::string> lemmas;
  std::optional<std::string> hypernym;
  std::vector<std::string> holonyms;
};

class LexDB {
 public:
  static LexDB load(const std::string& path);
  static const LexDB& instance();  // loads from the bundled data file

  std::optional<std::string> first_noun_synset(const std::string& lemma) const;
  // Chain self -> ... -> root.
  std::vector<std::string> ancestors(const std::string& synset_id) const;
  int depth(const std::string& synset_id) const;  // edges to the root
  const Synset* get(const std::string& id) const;
  std::vector<std::string> verb_synsets_of(const std::string& lemma) const;

 private:
  std::vector<Synset> synsets_;
  std::map<std::string, size_t> by_id_;
  std::map<std::string, std::vector<size_t>> by_lemma_;
};

struct DepthScore {
  std::string word;
  double h = 0.0;
  double h_complement = 1.0;
};

std::map<std::string, DepthScore> depth_scores(const std::set<std::string>& lemmas,
                                               const std::set<std::string>& doc_vocab,
                                               const LexDB& db = LexDB::instance());

bool is_composite_relation(const std::string& relation_phrase,
                           const std::vector<std::string>& synset_ids = {"include.v.01"},
                           const LexDB& db = LexDB::instance());

struct TaxonomyLinks {
  // "a_specializes_b" / "b_specializes_a" for generalization;
  // "a_part_of_b" / "b_part_of_a" for composite; empty when absent.
  std::string generalization;
  std::string composite;
};

TaxonomyLinks taxonomy_links(const std::string& word_a, const std::string& word_b,
                             const LexDB& db = LexDB::instance());

std::optional<std::string> lowest_common_hypernym(const std::set<std::string>& words,
                                                  const LexDB& db = LexDB::instance());

}  // namespace t2m::semantics
