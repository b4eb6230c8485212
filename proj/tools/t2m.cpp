// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "t2m/backends.hpp"
#include "t2m/bdd.hpp"
#include "t2m/codegen.hpp"
#include "t2m/config.hpp"
#include "t2m/corpus.hpp"
#include "t2m/embed.hpp"
#include "t2m/kgraph.hpp"
#include "t2m/pipeline.hpp"
#include "t2m/scoring.hpp"
#include "t2m/semantics.hpp"
#include "t2m/simrun.hpp"
#include "t2m/textprep.hpp"
#include "t2m/util.hpp"

namespace fs = std::filesystem;
using t2m::json;

namespace {

t2m::config::PipelineConfig load_config_arg(const std::string& path) {
  auto cfg = path.empty() ? t2m::config::default_config() : t2m::config::load_config(path);
  t2m::config::apply_env_overrides(cfg);
  return cfg;
}

json documents_manifest(const t2m::corpus::Corpus& c) {
  json docs = json::array();
  for (const auto& d : c.documents)
    docs.push_back({{"id", d.id},
                    {"title", d.title},
                    {"path", d.source_path},
                    {"word_count", d.word_count},
                    {"text", d.raw_text}});
  return {{"name", c.name}, {"documents", docs}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"text2model: natural-language descriptions to SysML BDDs and simulation code"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "pipeline config JSON")->envname("T2M_CONFIG");

  // ---- ingest ----
  auto* ingest = app.add_subcommand("ingest", "load documents into a corpus manifest");
  std::vector<std::string> ingest_paths;
  std::string ingest_split, ingest_out = "manifest.json";
  ingest->add_option("--paths", ingest_paths, "document files")->required();
  ingest->add_option("--split-regex", ingest_split, "heading regex to split files into sections");
  ingest->add_option("--out", ingest_out, "output manifest");

  // ---- preprocess ----
  auto* preprocess = app.add_subcommand("preprocess", "spelling + coreference + tagging");
  std::string prep_corpus, prep_out = "prep.json", prep_subs, prep_lm_extra;
  preprocess->add_option("--corpus", prep_corpus, "corpus manifest JSON")->required();
  preprocess->add_option("--lm-extra", prep_lm_extra, "extra text file for the language model");
  preprocess->add_option("--out", prep_out, "output prep JSON");
  preprocess->add_option("--subs", prep_subs, "spelling substitution log CSV");

  // ---- kg ----
  auto* kg = app.add_subcommand("kg", "knowledge graph extraction for one document");
  std::string kg_prep, kg_doc, kg_out = "kg.json";
  kg->add_option("--prep", kg_prep, "prep JSON")->required();
  kg->add_option("--doc", kg_doc, "document id to model")->required();
  kg->add_option("--out", kg_out, "output kg JSON");

  // ---- bdd ----
  auto* bdd_cmd = app.add_subcommand("bdd", "compile the knowledge graph into a BDD");
  std::string bdd_kg, bdd_prep, bdd_out = "bdd.json", bdd_puml, bdd_root, bdd_doc;
  bdd_cmd->add_option("--kg", bdd_kg, "kg JSON")->required();
  bdd_cmd->add_option("--prep", bdd_prep, "prep JSON")->required();
  bdd_cmd->add_option("--doc", bdd_doc, "document id (defaults to the only document)");
  bdd_cmd->add_option("--out", bdd_out, "output bdd JSON");
  bdd_cmd->add_option("--puml", bdd_puml, "PlantUML output");
  bdd_cmd->add_option("--root", bdd_root, "emit only the sub-diagram under this block");

  // ---- score ----
  auto* score = app.add_subcommand("score", "score a BDD against ground truth");
  std::string score_bdd_path, score_truth, score_out = "report.json";
  score->add_option("--bdd", score_bdd_path, "extracted bdd JSON")->required();
  score->add_option("--truth", score_truth, "ground-truth bdd JSON")->required();
  score->add_option("--out", score_out, "output report JSON");

  // ---- codegen ----
  auto* codegen_cmd = app.add_subcommand("codegen", "generate the simulation source tree");
  std::string cg_bdd, cg_templates, cg_constants, cg_out = "build";
  codegen_cmd->add_option("--bdd", cg_bdd, "bdd JSON")->required();
  codegen_cmd->add_option("--templates", cg_templates, "equation template registry JSON");
  codegen_cmd->add_option("--constants", cg_constants, "constants JSON");
  codegen_cmd->add_option("--out-dir", cg_out, "output directory");

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "run a generated or reference simulation");
  std::string sim_build = "build", sim_out = "traj.csv", sim_plot;
  bool sim_reference = false;
  double sim_dt = 0.01, sim_total = 30.0;
  std::vector<std::string> sim_init;
  simulate->add_option("--build", sim_build, "generated tree directory");
  simulate->add_flag("--reference", sim_reference, "use the built-in reference evaluator");
  simulate->add_option("--time-step", sim_dt, "time step in seconds");
  simulate->add_option("--total-time", sim_total, "total time in seconds");
  simulate->add_option("--init", sim_init, "initial conditions, state=value");
  simulate->add_option("--out", sim_out, "trajectory CSV path");
  simulate->add_option("--plot", sim_plot, "trajectory SVG path");

  // ---- pipeline ----
  auto* pipe = app.add_subcommand("pipeline", "run every stage end-to-end");
  std::vector<std::string> pipe_corpus;
  std::string pipe_input, pipe_truth, pipe_out = "out";
  double pipe_dt = 0.01, pipe_total = 30.0;
  std::vector<std::string> pipe_init;
  pipe->add_option("--corpus", pipe_corpus, "reference corpus files")->required();
  pipe->add_option("--input", pipe_input, "input document")->required();
  pipe->add_option("--truth", pipe_truth, "ground-truth bdd JSON");
  pipe->add_option("--out-dir", pipe_out, "artifact directory");
  pipe->add_option("--time-step", pipe_dt, "simulation time step");
  pipe->add_option("--total-time", pipe_total, "simulation total time");
  pipe->add_option("--init", pipe_init, "initial conditions, state=value");

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = load_config_arg(config_path);

    if (*ingest) {
      auto c = t2m::corpus::load_corpus(
          ingest_paths,
          ingest_split.empty() ? std::nullopt : std::optional<std::string>(ingest_split));
      json manifest = documents_manifest(c);
      manifest["config_hash"] = cfg.hash();
      t2m::write_file(ingest_out, manifest.dump(2) + "\n");
      auto stats = t2m::corpus::corpus_stats(c);
      std::cout << "documents: " << stats.document_count
                << ", mean words: " << stats.mean_word_count << "\n";
      return 0;
    }

    if (*preprocess) {
      json manifest = json::parse(t2m::read_file(prep_corpus));
      std::vector<std::string> lm_texts;
      for (const auto& d : manifest["documents"]) lm_texts.push_back(d["text"].get<std::string>());
      if (!prep_lm_extra.empty()) lm_texts.push_back(t2m::read_file(prep_lm_extra));
      auto lm = t2m::textprep::build_language_model(lm_texts);
      auto coref = t2m::backends::make_coref_resolver(cfg.backends.coref_resolver);
      json out_docs = json::array();
      std::string subs_csv = "doc_id,sentence_index,original,corrected\n";
      for (const auto& jd : manifest["documents"]) {
        t2m::corpus::Document doc;
        doc.id = jd["id"].get<std::string>();
        doc.raw_text = jd["text"].get<std::string>();
        std::vector<t2m::textprep::SpellingSubstitution> subs;
        doc = t2m::textprep::correct_document(doc, lm, &subs);
        for (const auto& s : subs)
          subs_csv += s.doc_id + "," + std::to_string(s.sentence_index) + "," + s.original +
                      "," + s.corrected + "\n";
        doc = t2m::textprep::resolve_coreferences(doc, *coref);
        out_docs.push_back(t2m::pipeline::prep_to_json(t2m::textprep::preprocess_document(doc)));
      }
      json out = {{"documents", out_docs}, {"config_hash", cfg.hash()}};
      t2m::write_file(prep_out, out.dump(2) + "\n");
      if (!prep_subs.empty()) t2m::write_file(prep_subs, subs_csv);
      return 0;
    }

    if (*kg) {
      json prep = json::parse(t2m::read_file(kg_prep));
      std::vector<t2m::textprep::PreprocessedDocument> reference;
      std::optional<t2m::textprep::PreprocessedDocument> target;
      for (const auto& jd : prep["documents"]) {
        auto d = t2m::pipeline::prep_from_json(jd);
        if (d.doc_id == kg_doc)
          target = d;
        else
          reference.push_back(std::move(d));
      }
      if (!target) throw std::runtime_error("document not found in prep: " + kg_doc);
      auto index = t2m::kgraph::build_corpus_index(reference);
      auto nouns =
          t2m::kgraph::extract_key_nouns(*target, index, cfg.hyperparameters.sigma_tfidf);
      auto rel = t2m::backends::make_relation_extractor(cfg.backends.relation_extractor);
      std::vector<std::string> sentences;
      for (const auto& s : target->sentences) sentences.push_back(s.original);
      auto triples = t2m::kgraph::extract_relations(sentences, target->doc_id, *rel,
                                                    cfg.hyperparameters.sigma_relationship);
      auto phrases = t2m::kgraph::select_key_phrases(
          triples, nouns.nouns, *target, index, cfg.hyperparameters.l_phrase,
          cfg.hyperparameters.sigma_p, t2m::kgraph::unit_lexicon());
      t2m::pipeline::KgArtifact a;
      a.graph = t2m::kgraph::select_key_relationships(triples, phrases, nouns.nouns,
                                                      cfg.hyperparameters.l_phrase);
      a.key_nouns = nouns.nouns;
      a.gamma = t2m::kgraph::gamma_scores(nouns.nouns, *target);
      std::set<std::string> lemmas, vocab;
      for (const auto& k : nouns.nouns) lemmas.insert(k.lemma);
      for (const auto& s : target->sentences)
        for (const auto& t : s.tokens) vocab.insert(t.lemma);
      for (const auto& [w, d] : t2m::semantics::depth_scores(lemmas, vocab))
        a.h_complement[w] = d.h_complement;
      json out = t2m::pipeline::kg_to_json(a);
      out["config_hash"] = cfg.hash();
      t2m::write_file(kg_out, out.dump(2) + "\n");
      return 0;
    }

    if (*bdd_cmd) {
      auto a = t2m::pipeline::kg_from_json(json::parse(t2m::read_file(bdd_kg)));
      json prep = json::parse(t2m::read_file(bdd_prep));
      std::optional<t2m::textprep::PreprocessedDocument> target;
      json docs = prep.contains("documents") ? prep["documents"] : json::array({prep["input"]});
      for (const auto& jd : docs) {
        auto d = t2m::pipeline::prep_from_json(jd);
        if (bdd_doc.empty() || d.doc_id == bdd_doc) {
          target = std::move(d);
          if (!bdd_doc.empty()) break;
        }
      }
      if (!target) throw std::runtime_error("document not found in prep");
      auto attr = t2m::backends::make_attribute_extractor(cfg.backends.attribute_extractor,
                                                          cfg.paths.prompt_template);
      auto base = t2m::bdd::build_bdd(a.graph, *target, *attr,
                                      cfg.hyperparameters.sigma_rel_difference);
      auto diagram = t2m::bdd::augment(base, {a.gamma, a.h_complement});
      json out = t2m::bdd::to_json(diagram);
      out["config_hash"] = cfg.hash();
      t2m::write_file(bdd_out, out.dump(2) + "\n");
      if (!bdd_puml.empty())
        t2m::write_file(bdd_puml,
                        t2m::bdd::emit_plantuml(diagram, bdd_root.empty()
                                                          ? std::nullopt
                                                          : std::optional<std::string>(bdd_root)));
      return 0;
    }

    if (*score) {
      auto extracted = t2m::bdd::bdd_from_json(json::parse(t2m::read_file(score_bdd_path)));
      auto truth = t2m::bdd::bdd_from_json(json::parse(t2m::read_file(score_truth)));
      auto embedder = t2m::semantics::make_embedder(cfg.backends.embedder);
      auto report = t2m::scoring::score_bdd(extracted, truth, cfg.hyperparameters.sigma_block,
                                            cfg.hyperparameters.sigma_attribute, *embedder);
      json out = t2m::scoring::to_json(report);
      out["config_hash"] = cfg.hash();
      t2m::write_file(score_out, out.dump(2) + "\n");
      std::cout << "set_similarity: " << report.set_similarity
                << ", normalized_set_match: " << report.normalized_set_match
                << ", zero_attribute_match: " << report.zero_attribute_match << "\n";
      return 0;
    }

    if (*codegen_cmd) {
      auto diagram = t2m::bdd::bdd_from_json(json::parse(t2m::read_file(cg_bdd)));
      std::vector<t2m::codegen::EquationTemplate> registry;
      t2m::codegen::ConstantsDB constants;
      std::string reg_path = cg_templates.empty() ? cfg.paths.registry : cg_templates;
      std::string const_path = cg_constants.empty() ? cfg.paths.constants : cg_constants;
      if (!reg_path.empty()) registry = t2m::codegen::load_registry(reg_path);
      if (!const_path.empty()) constants = t2m::codegen::load_constants(const_path);
      auto embedder = t2m::semantics::make_embedder(cfg.backends.embedder);
      t2m::codegen::CodegenOptions opts;
      opts.mask = cfg.hyperparameters.mask;
      opts.sigma_func = cfg.hyperparameters.sigma_func;
      opts.sigma_attribute = cfg.hyperparameters.sigma_attribute;
      auto result = t2m::codegen::generate_tree(diagram, registry, constants, *embedder, opts);
      result.system_plan["config_hash"] = cfg.hash();
      t2m::codegen::write_tree(result, cg_out);
      std::cout << "generated " << result.files.size() << " files in " << cg_out << "\n";
      return 0;
    }

    if (*simulate) {
      t2m::simrun::SimConfig sim;
      sim.time_step = sim_dt;
      sim.total_time = sim_total;
      for (const auto& kv : sim_init) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw std::runtime_error("bad --init value (want state=value): " + kv);
        sim.initial_conditions[kv.substr(0, eq)] = std::atof(kv.c_str() + eq + 1);
      }
      t2m::simrun::Trajectory traj;
      if (sim_reference) {
        json plan =
            json::parse(t2m::read_file((fs::path(sim_build) / "system_plan.json").string()));
        traj = t2m::simrun::run_reference(plan, sim);
      } else {
        traj = t2m::simrun::run_generated(sim_build, sim);
      }
      t2m::simrun::export_trajectory(traj, "csv", sim_out);
      if (!sim_plot.empty()) t2m::simrun::plot_trajectory(traj, sim_plot);
      std::cout << "steps: " << traj.steps() << "\n";
      return 0;
    }

    if (*pipe) {
      t2m::pipeline::PipelineInputs in;
      in.corpus_paths = pipe_corpus;
      in.input_doc_path = pipe_input;
      if (!pipe_truth.empty()) in.truth_path = pipe_truth;
      in.out_dir = pipe_out;
      in.time_step = pipe_dt;
      in.total_time = pipe_total;
      for (const auto& kv : pipe_init) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw std::runtime_error("bad --init value (want state=value): " + kv);
        in.initial_conditions[kv.substr(0, eq)] = std::atof(kv.c_str() + eq + 1);
      }
      auto statuses = t2m::pipeline::run_pipeline(cfg, in);
      for (const auto& s : statuses)
        std::cout << s.stage << ": " << s.artifact << (s.reused ? " (cached)" : "") << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
