// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>

#include "t2m/util.hpp"

namespace t2m::config {

struct Hyperparameters {
  double sigma_tfidf = 0.0;
  int l_phrase = 3;
  double sigma_p = 0.6;
  double sigma_rel_difference = 0.5;
  double sigma_relationship = 0.5;
  double sigma_attribute = 0.7;
  double sigma_block = 0.7;
  double sigma_func = 0.5;
  std::pair<int, int> mask{0, 0};
};

struct Backends {
  std::string relation_extractor = "pattern";     // pattern | http:<url>
  std::string attribute_extractor = "pattern";    // pattern | http:<url>
  std::string coref_resolver = "rule";            // rule | http:<url>
  std::string embedder = "hashed-trigram";        // hashed-trigram[:dim] | http:<url>
};

struct Paths {
  std::string lexdb;
  std::string stopwords;
  std::string prompt_template;
  std::string registry;
  std::string constants;
};

struct PipelineConfig {
  Hyperparameters hyperparameters;
  Backends backends;
  Paths paths;

  // FNV hash of the canonical JSON dump; embedded in every artifact.
  std::string hash() const;
};

PipelineConfig default_config();
PipelineConfig load_config(const std::string& path);
PipelineConfig config_from_json(const json& j);
json to_json(const PipelineConfig& c);

// Range checks per the hyperparameter table; throws on violation.
void validate(const PipelineConfig& c);

// Environment variables override backend endpoints only:
// T2M_RELATION_BACKEND, T2M_ATTRIBUTE_BACKEND, T2M_COREF_BACKEND, T2M_EMBEDDER_BACKEND.
void apply_env_overrides(PipelineConfig& c);

}  // namespace t2m::config
