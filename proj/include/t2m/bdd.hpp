// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "t2m/kgraph.hpp"
#include "t2m/util.hpp"

namespace t2m::bdd {

struct Attribute {
  std::string label;
  std::string value;
  std::string unit;  // empty when absent
  std::string kind;  // "numeric" | "descriptive"
  kgraph::SentenceRef source_sentence;
};

struct Operation {
  std::string name;
  kgraph::SentenceRef source_sentence;
};

struct SourceSentence {
  std::string doc_id;
  int index = 0;
  std::string text;
};

struct Block {
  std::string label;
  std::vector<Attribute> attributes;
  std::vector<Operation> operations;
  std::vector<std::string> parts;
  bool augmented = false;
  std::vector<SourceSentence> source_sentences;
};

struct TypedRelationship {
  std::string kind;  // "composite" | "generalization" | "reference"
  std::string from;  // part / specialized / source
  std::string to;    // whole / general / target
  bool augmented = false;
};

struct BDD {
  std::vector<Block> blocks;
  std::vector<TypedRelationship> relationships;
  // All sentences of each contributing document, for mask expansion.
  std::map<std::string, std::vector<std::string>> source_text;

  Block* find(const std::string& label);
  const Block* find(const std::string& label) const;
};

class AttributeExtractor {
 public:
  virtual ~AttributeExtractor() = default;
  // One context sentence per call; returns parsed attributes (may be empty).
  virtual std::vector<Attribute> extract(const std::string& block_label,
                                         const std::string& context) = 0;
};

// Regex/pattern fallback: "<number> <unit>", copular adjectives,
// adjective-noun pairs, "approximated as X for Y".
class PatternAttributeExtractor : public AttributeExtractor {
 public:
  std::vector<Attribute> extract(const std::string& block_label,
                                 const std::string& context) override;
};

std::vector<Attribute> extract_attributes(const std::string& block_label,
                                          const std::vector<SourceSentence>& context_sentences,
                                          AttributeExtractor& backend);

struct MappedRelationship {
  TypedRelationship relationship;
  std::string operation_subject;  // block receiving the operation
  std::string operation_name;     // the relation phrase
};

MappedRelationship map_relationship(const kgraph::Edge& edge,
                                    const std::map<std::string, double>& phrase_scores,
                                    double sigma_rel_difference);

// Knowledge graph -> BDD (attributes + typed relationships), before augmentation.
BDD build_bdd(const kgraph::KnowledgeGraph& kg, const textprep::PreprocessedDocument& doc,
              AttributeExtractor& attr_backend, double sigma_rel_difference);

struct AugmentContext {
  std::map<std::string, double> gamma;        // per key-noun secondary importance
  std::map<std::string, double> h_complement; // per word
};

BDD augment(const BDD& in, const AugmentContext& ctx);

std::string emit_plantuml(const BDD& bdd, const std::optional<std::string>& root = std::nullopt);
BDD parse_plantuml(const std::string& text);

json to_json(const BDD& bdd);
BDD bdd_from_json(const json& j);

}  // namespace t2m::bdd
