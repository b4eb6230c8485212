// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "t2m/semantics.hpp"
#include "t2m/util.hpp"

#ifndef T2M_DATA_DIR
#define T2M_DATA_DIR "data"
#endif

namespace t2m::semantics {

LexDB LexDB::load(const std::string& path) {
  LexDB db;
  json j = json::parse(read_file(path));
  for (const auto& e : j.at("synsets")) {
    Synset s;
    s.id = e.at("id").get<std::string>();
    s.pos = e.at("pos").get<std::string>();
    s.lemmas = e.at("lemmas").get<std::vector<std::string>>();
    if (e.contains("hypernym") && !e.at("hypernym").is_null())
      s.hypernym = e.at("hypernym").get<std::string>();
    if (e.contains("holonyms")) s.holonyms = e.at("holonyms").get<std::vector<std::string>>();
    db.by_id_[s.id] = db.synsets_.size();
    for (const auto& l : s.lemmas) db.by_lemma_[to_lower(l)].push_back(db.synsets_.size());
    db.synsets_.push_back(std::move(s));
  }
  return db;
}

const LexDB& LexDB::instance() {
  static const LexDB db = load(std::string(T2M_DATA_DIR) + "/lexdb.json");
  return db;
}

const Synset* LexDB::get(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &synsets_[it->second];
}

std::optional<std::string> LexDB::first_noun_synset(const std::string& lemma) const {
  auto it = by_lemma_.find(to_lower(lemma));
  if (it == by_lemma_.end()) return std::nullopt;
  for (size_t idx : it->second)
    if (synsets_[idx].pos == "n") return synsets_[idx].id;
  return std::nullopt;
}

std::vector<std::string> LexDB::verb_synsets_of(const std::string& lemma) const {
  std::vector<std::string> out;
  auto it = by_lemma_.find(to_lower(lemma));
  if (it == by_lemma_.end()) return out;
  for (size_t idx : it->second)
    if (synsets_[idx].pos == "v") out.push_back(synsets_[idx].id);
  return out;
}

std::vector<std::string> LexDB::ancestors(const std::string& synset_id) const {
  std::vector<std::string> chain;
  const Synset* s = get(synset_id);
  while (s) {
    chain.push_back(s->id);
    if (chain.size() > synsets_.size()) throw std::runtime_error("hypernym cycle at " + s->id);
    s = s->hypernym ? get(*s->hypernym) : nullptr;
  }
  return chain;
}

int LexDB::depth(const std::string& synset_id) const {
  return (int)ancestors(synset_id).size() - 1;
}

}  // namespace t2m::semantics
