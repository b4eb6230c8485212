// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/scoring.hpp"

#include <algorithm>
#include <stdexcept>

namespace t2m::scoring {

namespace {

// Non-augmented blocks only: augmentation artifacts are not scored.
std::vector<const bdd::Block*> scored_blocks(const std::vector<bdd::Block>& blocks) {
  std::vector<const bdd::Block*> out;
  for (const auto& b : blocks)
    if (!b.augmented) out.push_back(&b);
  return out;
}

double clamped_cs(semantics::Embedder& e, const std::string& a, const std::string& b) {
  return std::max(0.0, semantics::text_similarity(e, a, b));
}

// Best extracted block by label cosine; nullptr when none clears sigma_block.
const bdd::Block* best_label_match(const bdd::Block& truth_block,
                                   const std::vector<const bdd::Block*>& candidates,
                                   double sigma_block, semantics::Embedder& embedder) {
  const bdd::Block* best = nullptr;
  double best_cs = sigma_block;
  for (const auto* c : candidates) {
    double cs = clamped_cs(embedder, c->label, truth_block.label);
    if (cs > best_cs) {
      best_cs = cs;
      best = c;
    }
  }
  return best;
}

bool shares_word(const std::string& a, const std::string& b) {
  auto wa = split_ws(a);
  auto wb = split_ws(b);
  for (const auto& x : wa)
    if (std::find(wb.begin(), wb.end(), x) != wb.end()) return true;
  return false;
}

}  // namespace

PhraseMetrics phrase_metrics(const std::set<std::string>& extracted,
                             const std::set<std::string>& truth) {
  if (truth.empty()) throw std::invalid_argument("phrase_metrics: empty ground truth");
  PhraseMetrics m;
  m.normalized_extracted_phrase_number = double(extracted.size()) / double(truth.size());
  if (extracted.empty()) return m;

  int exact = 0;
  for (const auto& t : truth)
    if (extracted.count(t)) ++exact;
  int fuzzy = 0;
  for (const auto& t : truth) {
    for (const auto& e : extracted)
      if (shares_word(t, e)) {
        ++fuzzy;
        break;
      }
  }
  m.recall = double(exact) / double(truth.size());
  m.precision = double(exact) / double(extracted.size());
  m.fuzzy_recall = double(fuzzy) / double(truth.size());
  m.fuzzy_precision = double(fuzzy) / double(extracted.size());
  return m;
}

double attribute_similarity(const bdd::Attribute& a1, const bdd::Attribute& a2,
                            semantics::Embedder& embedder) {
  double s;
  if (a1.unit == a2.unit)
    s = clamped_cs(embedder, a1.value, a2.value);
  else
    s = 0.5 * (clamped_cs(embedder, a1.value, a2.value) +
               clamped_cs(embedder, a1.unit, a2.unit));
  return std::clamp(s, 0.0, 1.0);
}

double block_similarity(const bdd::Block& block, const bdd::Block& truth_block,
                        double sigma_attribute, semantics::Embedder& embedder) {
  if (truth_block.attributes.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& g : truth_block.attributes) {
    const bdd::Attribute* best = nullptr;
    double best_cs = sigma_attribute;
    for (const auto& a : block.attributes) {
      double cs = clamped_cs(embedder, a.label, g.label);
      if (cs > best_cs) {
        best_cs = cs;
        best = &a;
      }
    }
    if (best) sum += attribute_similarity(*best, g, embedder);
  }
  return sum / double(truth_block.attributes.size());
}

double set_similarity(const std::vector<bdd::Block>& blocks,
                      const std::vector<bdd::Block>& truth, double sigma_block,
                      double sigma_attribute, semantics::Embedder& embedder,
                      std::vector<BlockMatch>* matches) {
  auto candidates = scored_blocks(blocks);
  int nonzero = 0;
  double sum = 0.0;
  for (const auto& g : truth) {
    if (g.augmented || g.attributes.empty()) continue;
    ++nonzero;
    const bdd::Block* match = best_label_match(g, candidates, sigma_block, embedder);
    double score = match ? block_similarity(*match, g, sigma_attribute, embedder) : 0.0;
    sum += score;
    if (matches) {
      BlockMatch bm;
      bm.truth_label = g.label;
      if (match) bm.matched_label = match->label;
      bm.score = score;
      matches->push_back(bm);
    }
  }
  if (nonzero == 0)
    throw std::invalid_argument("set_similarity: no ground-truth block with attributes");
  return sum / double(nonzero);
}

double zero_attribute_match(const std::vector<bdd::Block>& blocks,
                            const std::vector<bdd::Block>& truth, double sigma_block,
                            semantics::Embedder& embedder) {
  auto candidates = scored_blocks(blocks);
  int zero_matched = 0;
  int zero_matched_zero = 0;
  bool any_zero = false;
  for (const auto& g : truth) {
    if (g.augmented || !g.attributes.empty()) continue;
    any_zero = true;
    const bdd::Block* match = best_label_match(g, candidates, sigma_block, embedder);
    if (!match) continue;
    ++zero_matched;
    if (match->attributes.empty()) ++zero_matched_zero;
  }
  if (!any_zero || zero_matched == 0) return 1.0;
  return double(zero_matched_zero) / double(zero_matched);
}

double normalized_set_match(const std::vector<bdd::Block>& blocks,
                            const std::vector<bdd::Block>& truth, double sigma_block,
                            semantics::Embedder& embedder) {
  auto candidates = scored_blocks(blocks);
  int total = 0;
  int matched = 0;
  for (const auto& g : truth) {
    if (g.augmented) continue;
    ++total;
    if (best_label_match(g, candidates, sigma_block, embedder)) ++matched;
  }
  if (total == 0) throw std::invalid_argument("normalized_set_match: empty ground truth");
  return double(matched) / double(total);
}

ScoreReport score_bdd(const bdd::BDD& extracted, const bdd::BDD& truth, double sigma_block,
                      double sigma_attribute, semantics::Embedder& embedder) {
  ScoreReport r;
  std::set<std::string> e_labels, t_labels;
  for (const auto& b : extracted.blocks)
    if (!b.augmented) e_labels.insert(b.label);
  for (const auto& b : truth.blocks)
    if (!b.augmented) t_labels.insert(b.label);
  r.phrase_metrics = phrase_metrics(e_labels, t_labels);
  r.set_similarity = set_similarity(extracted.blocks, truth.blocks, sigma_block,
                                    sigma_attribute, embedder, &r.block_similarities);
  r.zero_attribute_match =
      zero_attribute_match(extracted.blocks, truth.blocks, sigma_block, embedder);
  r.normalized_set_match =
      normalized_set_match(extracted.blocks, truth.blocks, sigma_block, embedder);
  r.embedder = embedder.name();
  return r;
}

json to_json(const ScoreReport& r) {
  json matches = json::array();
  for (const auto& m : r.block_similarities)
    matches.push_back({{"truth_label", m.truth_label},
                       {"matched_label", m.matched_label ? json(*m.matched_label) : json()},
                       {"score", m.score}});
  return {{"phrase_metrics",
           {{"precision", r.phrase_metrics.precision},
            {"recall", r.phrase_metrics.recall},
            {"fuzzy_precision", r.phrase_metrics.fuzzy_precision},
            {"fuzzy_recall", r.phrase_metrics.fuzzy_recall},
            {"normalized_extracted_phrase_number",
             r.phrase_metrics.normalized_extracted_phrase_number}}},
          {"block_similarities", matches},
          {"set_similarity", r.set_similarity},
          {"zero_attribute_match", r.zero_attribute_match},
          {"normalized_set_match", r.normalized_set_match},
          {"embedder", r.embedder}};
}

}  // namespace t2m::scoring
