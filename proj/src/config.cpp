// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/config.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#ifndef T2M_DATA_DIR
#define T2M_DATA_DIR "data"
#endif

namespace t2m::config {

std::string PipelineConfig::hash() const {
  std::ostringstream ss;
  ss << std::hex << fnv1a64(to_json(*this).dump());
  return ss.str();
}

PipelineConfig default_config() {
  PipelineConfig c;
  const std::string data = T2M_DATA_DIR;
  c.paths.lexdb = data + "/lexdb.json";
  c.paths.stopwords = data + "/stopwords.txt";
  c.paths.prompt_template = data + "/prompt_template.txt";
  c.paths.registry = data + "/registry.json";
  c.paths.constants = data + "/constants.json";
  return c;
}

json to_json(const PipelineConfig& c) {
  return {{"hyperparameters",
           {{"sigma_tfidf", c.hyperparameters.sigma_tfidf},
            {"l_phrase", c.hyperparameters.l_phrase},
            {"sigma_p", c.hyperparameters.sigma_p},
            {"sigma_rel_difference", c.hyperparameters.sigma_rel_difference},
            {"sigma_relationship", c.hyperparameters.sigma_relationship},
            {"sigma_attribute", c.hyperparameters.sigma_attribute},
            {"sigma_block", c.hyperparameters.sigma_block},
            {"sigma_func", c.hyperparameters.sigma_func},
            {"mask", {c.hyperparameters.mask.first, c.hyperparameters.mask.second}}}},
          {"backends",
           {{"relation_extractor", c.backends.relation_extractor},
            {"attribute_extractor", c.backends.attribute_extractor},
            {"coref_resolver", c.backends.coref_resolver},
            {"embedder", c.backends.embedder}}},
          {"paths",
           {{"lexdb", c.paths.lexdb},
            {"stopwords", c.paths.stopwords},
            {"prompt_template", c.paths.prompt_template},
            {"registry", c.paths.registry},
            {"constants", c.paths.constants}}}};
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig c = default_config();
  if (j.contains("hyperparameters")) {
    const auto& h = j["hyperparameters"];
    c.hyperparameters.sigma_tfidf = h.value("sigma_tfidf", c.hyperparameters.sigma_tfidf);
    c.hyperparameters.l_phrase = h.value("l_phrase", c.hyperparameters.l_phrase);
    c.hyperparameters.sigma_p = h.value("sigma_p", c.hyperparameters.sigma_p);
    c.hyperparameters.sigma_rel_difference =
        h.value("sigma_rel_difference", c.hyperparameters.sigma_rel_difference);
    c.hyperparameters.sigma_relationship =
        h.value("sigma_relationship", c.hyperparameters.sigma_relationship);
    c.hyperparameters.sigma_attribute =
        h.value("sigma_attribute", c.hyperparameters.sigma_attribute);
    c.hyperparameters.sigma_block = h.value("sigma_block", c.hyperparameters.sigma_block);
    c.hyperparameters.sigma_func = h.value("sigma_func", c.hyperparameters.sigma_func);
    if (h.contains("mask")) {
      c.hyperparameters.mask.first = h["mask"].at(0).get<int>();
      c.hyperparameters.mask.second = h["mask"].at(1).get<int>();
    }
  }
  if (j.contains("backends")) {
    const auto& b = j["backends"];
    c.backends.relation_extractor = b.value("relation_extractor", c.backends.relation_extractor);
    c.backends.attribute_extractor =
        b.value("attribute_extractor", c.backends.attribute_extractor);
    c.backends.coref_resolver = b.value("coref_resolver", c.backends.coref_resolver);
    c.backends.embedder = b.value("embedder", c.backends.embedder);
  }
  if (j.contains("paths")) {
    const auto& p = j["paths"];
    c.paths.lexdb = p.value("lexdb", c.paths.lexdb);
    c.paths.stopwords = p.value("stopwords", c.paths.stopwords);
    c.paths.prompt_template = p.value("prompt_template", c.paths.prompt_template);
    c.paths.registry = p.value("registry", c.paths.registry);
    c.paths.constants = p.value("constants", c.paths.constants);
  }
  validate(c);
  return c;
}

PipelineConfig load_config(const std::string& path) {
  return config_from_json(json::parse(read_file(path)));
}

void validate(const PipelineConfig& c) {
  const auto& h = c.hyperparameters;
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("config validation: " + what);
  };
  if (h.sigma_tfidf < 0 || h.sigma_tfidf >= 1) fail("sigma_tfidf must be in [0,1)");
  if (h.l_phrase < 1) fail("l_phrase must be >= 1");
  if (h.sigma_p <= 0 || h.sigma_p >= 1) fail("sigma_p must be in (0,1)");
  if (h.sigma_rel_difference <= 0 || h.sigma_rel_difference >= 3)
    fail("sigma_rel_difference must be in (0,3)");
  if (h.sigma_relationship <= 0 || h.sigma_relationship >= 1)
    fail("sigma_relationship must be in (0,1)");
  if (h.sigma_attribute <= 0 || h.sigma_attribute >= 1) fail("sigma_attribute must be in (0,1)");
  if (h.sigma_block <= 0 || h.sigma_block >= 1) fail("sigma_block must be in (0,1)");
  if (h.mask.first < 0 || h.mask.second < 0) fail("mask values must be >= 0");
}

void apply_env_overrides(PipelineConfig& c) {
  auto get = [](const char* name) -> std::string {
    const char* v = std::getenv(name);
    return v ? v : "";
  };
  if (auto v = get("T2M_RELATION_BACKEND"); !v.empty()) c.backends.relation_extractor = v;
  if (auto v = get("T2M_ATTRIBUTE_BACKEND"); !v.empty()) c.backends.attribute_extractor = v;
  if (auto v = get("T2M_COREF_BACKEND"); !v.empty()) c.backends.coref_resolver = v;
  if (auto v = get("T2M_EMBEDDER_BACKEND"); !v.empty()) c.backends.embedder = v;
}

}  // namespace t2m::config
