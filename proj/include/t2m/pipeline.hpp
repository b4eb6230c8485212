// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "t2m/bdd.hpp"
#include "t2m/config.hpp"
#include "t2m/kgraph.hpp"
#include "t2m/textprep.hpp"
#include "t2m/util.hpp"

namespace t2m::pipeline {

// ---- artifact (de)serialization shared by the CLI subcommands ----

json prep_to_json(const textprep::PreprocessedDocument& doc);
textprep::PreprocessedDocument prep_from_json(const json& j);

struct KgArtifact {
  kgraph::KnowledgeGraph graph;
  std::vector<kgraph::KeyNoun> key_nouns;
  std::map<std::string, double> gamma;
  std::map<std::string, double> h_complement;
};

json kg_to_json(const KgArtifact& a);
KgArtifact kg_from_json(const json& j);

// ---- end-to-end orchestration ----

struct PipelineInputs {
  std::vector<std::string> corpus_paths;  // reference corpus documents
  std::string input_doc_path;             // the document to model
  std::optional<std::string> truth_path;  // ground-truth bdd.json
  std::string out_dir;
  double time_step = 0.01;
  double total_time = 30.0;
  std::map<std::string, double> initial_conditions;
};

struct StageStatus {
  std::string stage;
  std::string artifact;
  bool reused = false;
};

// ingest -> preprocess -> kg -> bdd -> (score) -> codegen -> simulate.
// Every artifact embeds the config hash; a stage whose artifact already
// carries the current hash is reused instead of recomputed.
std::vector<StageStatus> run_pipeline(const config::PipelineConfig& cfg,
                                      const PipelineInputs& inputs);

}  // namespace t2m::pipeline
