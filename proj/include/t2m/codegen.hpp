// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "t2m/bdd.hpp"
#include "t2m/embed.hpp"
#include "t2m/util.hpp"

namespace t2m::codegen {

struct EquationTemplate {
  std::string id;
  std::string name;
  std::string description;
  std::vector<std::string> states;
  std::vector<std::string> parameters;
  std::string source_template;
  std::string numeric_semantics_id;
};

std::vector<EquationTemplate> load_registry(const std::string& path);

struct ConstantEntry {
  double value = 0.0;
  std::string unit;
};

struct ConstantsDB {
  std::map<std::string, ConstantEntry> entries;
};

ConstantsDB load_constants(const std::string& path);

struct FileTreeNode {
  std::string kind;  // "folder" | "file"
  std::string name;
  std::optional<std::string> block_label;
  std::vector<FileTreeNode> children;
};

struct FileTreePlan {
  FileTreeNode root;  // kind=folder, name=""
  // block label -> path relative to the output root, e.g. "Kilogram_parts/Bob.py"
  std::map<std::string, std::string> file_paths;
};

FileTreePlan plan_file_tree(const bdd::BDD& diagram);

// "mass bob" -> "MassBob"; also used for CapitalizedCamel attribute names.
std::string pascal_case(const std::string& label);

struct OperationSpec {
  std::string name;
  std::string docstring;
  std::optional<std::string> body;         // rendered template body, when matched
  std::optional<std::string> template_id;
};

struct ClassSpec {
  std::string name;
  std::string docstring;
  std::vector<std::pair<std::string, std::string>> attribute_assignments;  // name -> literal
  std::optional<std::string> parent;
  std::vector<std::string> composed_children;  // class names
  std::vector<OperationSpec> operations;
  std::vector<std::string> states;
  std::vector<std::string> imports;  // rendered import lines
};

ClassSpec generate_class_skeleton(const bdd::Block& block, const bdd::BDD& diagram,
                                  std::pair<int, int> mask);

std::optional<EquationTemplate> match_equation_template(
    const std::string& docstring, const std::vector<EquationTemplate>& registry,
    double sigma_func, semantics::Embedder& embedder, double* match_score = nullptr);

struct Binding {
  std::string parameter;
  std::string expression;              // source-code expression substituted for the placeholder
  std::string kind;                    // constant | attribute | cross_class | placeholder
  std::optional<double> numeric_value; // resolved value when known
  std::optional<std::string> import_block;  // block label to import for cross_class
};

std::map<std::string, Binding> resolve_parameters(const EquationTemplate& tmpl,
                                                  const bdd::Block& block,
                                                  const bdd::BDD& diagram,
                                                  const ConstantsDB& constants,
                                                  double sigma_attribute,
                                                  semantics::Embedder& embedder);

struct SourceFile {
  std::string path;  // relative to output root
  std::string content;
};

struct CodegenOptions {
  std::pair<int, int> mask{0, 0};
  double sigma_func = 0.5;
  double sigma_attribute = 0.7;
};

struct GenerationResult {
  FileTreePlan plan;
  std::vector<SourceFile> files;
  std::vector<json> log;  // one JSONL record per generated function
  json system_plan;       // components with numeric semantics for the reference evaluator
};

SourceFile generate_component_code(const bdd::Block& block, const bdd::BDD& diagram,
                                   const FileTreePlan& plan,
                                   const std::vector<EquationTemplate>& registry,
                                   const ConstantsDB& constants,
                                   semantics::Embedder& embedder, const CodegenOptions& opts,
                                   std::vector<json>* log = nullptr,
                                   json* plan_components = nullptr);

SourceFile generate_system_class(const bdd::BDD& diagram, const FileTreePlan& plan,
                                 const std::vector<EquationTemplate>& registry,
                                 const ConstantsDB& constants, semantics::Embedder& embedder,
                                 const CodegenOptions& opts);

GenerationResult generate_tree(const bdd::BDD& diagram,
                               const std::vector<EquationTemplate>& registry,
                               const ConstantsDB& constants, semantics::Embedder& embedder,
                               const CodegenOptions& opts);

void write_tree(const GenerationResult& result, const std::string& out_dir);

}  // namespace t2m::codegen
