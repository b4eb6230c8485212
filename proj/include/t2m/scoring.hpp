// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "t2m/bdd.hpp"
#include "t2m/embed.hpp"
#include "t2m/util.hpp"

namespace t2m::scoring {

struct PhraseMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double fuzzy_precision = 0.0;
  double fuzzy_recall = 0.0;
  double normalized_extracted_phrase_number = 0.0;
};

PhraseMetrics phrase_metrics(const std::set<std::string>& extracted,
                             const std::set<std::string>& truth);

double attribute_similarity(const bdd::Attribute& a1, const bdd::Attribute& a2,
                            semantics::Embedder& embedder);

double block_similarity(const bdd::Block& block, const bdd::Block& truth_block,
                        double sigma_attribute, semantics::Embedder& embedder);

struct BlockMatch {
  std::string truth_label;
  std::optional<std::string> matched_label;
  double score = 0.0;
};

struct ScoreReport {
  PhraseMetrics phrase_metrics;
  std::vector<BlockMatch> block_similarities;
  double set_similarity = 0.0;
  double zero_attribute_match = 0.0;
  double normalized_set_match = 0.0;
  std::string embedder;
};

double set_similarity(const std::vector<bdd::Block>& blocks,
                      const std::vector<bdd::Block>& truth, double sigma_block,
                      double sigma_attribute, semantics::Embedder& embedder,
                      std::vector<BlockMatch>* matches = nullptr);

double zero_attribute_match(const std::vector<bdd::Block>& blocks,
                            const std::vector<bdd::Block>& truth, double sigma_block,
                            semantics::Embedder& embedder);

double normalized_set_match(const std::vector<bdd::Block>& blocks,
                            const std::vector<bdd::Block>& truth, double sigma_block,
                            semantics::Embedder& embedder);

ScoreReport score_bdd(const bdd::BDD& extracted, const bdd::BDD& truth, double sigma_block,
                      double sigma_attribute, semantics::Embedder& embedder);

json to_json(const ScoreReport& r);

}  // namespace t2m::scoring
