// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/pipeline.hpp"

#include <filesystem>
#include <set>

#include "t2m/backends.hpp"
#include "t2m/codegen.hpp"
#include "t2m/corpus.hpp"
#include "t2m/embed.hpp"
#include "t2m/scoring.hpp"
#include "t2m/semantics.hpp"
#include "t2m/simrun.hpp"

namespace t2m::pipeline {

namespace fs = std::filesystem;

json prep_to_json(const textprep::PreprocessedDocument& doc) {
  json sentences = json::array();
  for (const auto& s : doc.sentences) {
    json tokens = json::array();
    for (const auto& t : s.tokens)
      tokens.push_back({{"text", t.text},
                        {"pos_tag", t.pos_tag},
                        {"lemma", t.lemma},
                        {"is_stopword", t.is_stopword}});
    sentences.push_back({{"index", s.index}, {"original", s.original}, {"tokens", tokens}});
  }
  return {{"doc_id", doc.doc_id}, {"sentences", sentences}, {"noun_lemmas", doc.noun_lemmas}};
}

textprep::PreprocessedDocument prep_from_json(const json& j) {
  textprep::PreprocessedDocument doc;
  doc.doc_id = j.at("doc_id").get<std::string>();
  for (const auto& js : j.at("sentences")) {
    textprep::Sentence s;
    s.index = js.at("index").get<int>();
    s.original = js.at("original").get<std::string>();
    for (const auto& jt : js.at("tokens"))
      s.tokens.push_back({jt.at("text").get<std::string>(), jt.at("pos_tag").get<std::string>(),
                          jt.at("lemma").get<std::string>(), jt.at("is_stopword").get<bool>()});
    doc.sentences.push_back(std::move(s));
  }
  doc.noun_lemmas = j.value("noun_lemmas", std::vector<std::string>{});
  return doc;
}

json kg_to_json(const KgArtifact& a) {
  json nodes = json::array();
  for (const auto& p : a.graph.nodes)
    nodes.push_back({{"words", p.words}, {"count", p.count}, {"importance", p.importance}});
  json edges = json::array();
  for (const auto& e : a.graph.edges)
    edges.push_back({{"subject", e.subject},
                     {"relation", e.relation},
                     {"object", e.object},
                     {"confidence", e.confidence},
                     {"sentence_ref",
                      {{"doc_id", e.sentence_ref.doc_id},
                       {"index", e.sentence_ref.sentence_index}}}});
  json key_nouns = json::array();
  for (const auto& k : a.key_nouns)
    key_nouns.push_back(
        {{"lemma", k.lemma}, {"tfidf", k.tfidf}, {"tfidf_norm", k.tfidf_norm}});
  return {{"nodes", nodes},
          {"edges", edges},
          {"key_nouns", key_nouns},
          {"gamma", a.gamma},
          {"h_complement", a.h_complement}};
}

KgArtifact kg_from_json(const json& j) {
  KgArtifact a;
  for (const auto& jn : j.at("nodes")) {
    kgraph::Phrase p;
    p.words = jn.at("words").get<std::vector<std::string>>();
    p.count = jn.value("count", 1);
    p.importance = jn.value("importance", 0.0);
    a.graph.nodes.push_back(std::move(p));
  }
  for (const auto& je : j.at("edges")) {
    kgraph::Edge e;
    e.subject = je.at("subject").get<std::string>();
    e.relation = je.at("relation").get<std::string>();
    e.object = je.at("object").get<std::string>();
    e.confidence = je.value("confidence", 1.0);
    if (je.contains("sentence_ref")) {
      e.sentence_ref.doc_id = je["sentence_ref"].value("doc_id", "");
      e.sentence_ref.sentence_index = je["sentence_ref"].value("index", 0);
    }
    a.graph.edges.push_back(std::move(e));
  }
  for (const auto& jk : j.value("key_nouns", json::array())) {
    kgraph::KeyNoun k;
    k.lemma = jk.at("lemma").get<std::string>();
    k.tfidf = jk.value("tfidf", 0.0);
    k.tfidf_norm = jk.value("tfidf_norm", 0.0);
    a.key_nouns.push_back(std::move(k));
  }
  if (j.contains("gamma")) a.gamma = j["gamma"].get<std::map<std::string, double>>();
  if (j.contains("h_complement"))
    a.h_complement = j["h_complement"].get<std::map<std::string, double>>();
  return a;
}

namespace {

std::optional<json> load_cached(const std::string& path, const std::string& hash) {
  if (!fs::exists(path)) return std::nullopt;
  try {
    json j = json::parse(read_file(path));
    if (j.value("config_hash", "") == hash) return j;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

void save_artifact(const std::string& path, json j, const std::string& hash) {
  j["config_hash"] = hash;
  write_file(path, j.dump(2) + "\n");
}

}  // namespace

std::vector<StageStatus> run_pipeline(const config::PipelineConfig& cfg,
                                      const PipelineInputs& inputs) {
  std::vector<StageStatus> statuses;
  const std::string hash = cfg.hash();
  fs::create_directories(inputs.out_dir);
  auto artifact = [&](const std::string& name) {
    return (fs::path(inputs.out_dir) / name).string();
  };

  // ---- ingest ----
  const std::string manifest_path = artifact("manifest.json");
  json manifest;
  if (auto cached = load_cached(manifest_path, hash)) {
    manifest = *cached;
    statuses.push_back({"ingest", manifest_path, true});
  } else {
    auto reference = corpus::load_corpus(inputs.corpus_paths, std::nullopt, "reference");
    auto input = corpus::load_corpus({inputs.input_doc_path}, std::nullopt, "input");
    if (input.documents.empty()) throw std::runtime_error("input document is empty");
    json docs = json::array();
    for (const auto& d : reference.documents)
      docs.push_back({{"id", d.id},
                      {"title", d.title},
                      {"path", d.source_path},
                      {"word_count", d.word_count},
                      {"text", d.raw_text},
                      {"role", "reference"}});
    const auto& d = input.documents.front();
    docs.push_back({{"id", d.id},
                    {"title", d.title},
                    {"path", d.source_path},
                    {"word_count", d.word_count},
                    {"text", d.raw_text},
                    {"role", "input"}});
    manifest = {{"documents", docs}};
    save_artifact(manifest_path, manifest, hash);
    statuses.push_back({"ingest", manifest_path, false});
  }

  // ---- preprocess ----
  const std::string prep_path = artifact("prep.json");
  json prep;
  if (auto cached = load_cached(prep_path, hash)) {
    prep = *cached;
    statuses.push_back({"preprocess", prep_path, true});
  } else {
    std::vector<std::string> lm_texts;
    for (const auto& d : manifest["documents"]) lm_texts.push_back(d["text"].get<std::string>());
    auto lm = textprep::build_language_model(lm_texts);
    auto coref = backends::make_coref_resolver(cfg.backends.coref_resolver);

    json corpus_preps = json::array();
    json input_prep;
    json substitutions = json::array();
    for (const auto& jd : manifest["documents"]) {
      corpus::Document doc;
      doc.id = jd["id"].get<std::string>();
      doc.title = jd.value("title", "");
      doc.raw_text = jd["text"].get<std::string>();
      std::vector<textprep::SpellingSubstitution> subs;
      doc = textprep::correct_document(doc, lm, &subs);
      for (const auto& s : subs)
        substitutions.push_back({{"doc_id", s.doc_id},
                                 {"sentence_index", s.sentence_index},
                                 {"original", s.original},
                                 {"corrected", s.corrected}});
      doc = textprep::resolve_coreferences(doc, *coref);
      json p = prep_to_json(textprep::preprocess_document(doc));
      if (jd.value("role", "") == "input")
        input_prep = p;
      else
        corpus_preps.push_back(p);
    }
    prep = {{"corpus", corpus_preps}, {"input", input_prep}, {"substitutions", substitutions}};
    save_artifact(prep_path, prep, hash);
    statuses.push_back({"preprocess", prep_path, false});
  }

  auto input_doc = prep_from_json(prep["input"]);

  // ---- kg ----
  const std::string kg_path = artifact("kg.json");
  KgArtifact kg;
  if (auto cached = load_cached(kg_path, hash)) {
    kg = kg_from_json(*cached);
    statuses.push_back({"kg", kg_path, true});
  } else {
    std::vector<textprep::PreprocessedDocument> reference;
    for (const auto& p : prep["corpus"]) reference.push_back(prep_from_json(p));
    auto index = kgraph::build_corpus_index(reference);
    auto nouns =
        kgraph::extract_key_nouns(input_doc, index, cfg.hyperparameters.sigma_tfidf);

    auto rel_backend = backends::make_relation_extractor(cfg.backends.relation_extractor);
    std::vector<std::string> sentences;
    for (const auto& s : input_doc.sentences) sentences.push_back(s.original);
    auto triples = kgraph::extract_relations(sentences, input_doc.doc_id, *rel_backend,
                                             cfg.hyperparameters.sigma_relationship);
    auto phrases =
        kgraph::select_key_phrases(triples, nouns.nouns, input_doc, index,
                                   cfg.hyperparameters.l_phrase, cfg.hyperparameters.sigma_p,
                                   kgraph::unit_lexicon());
    kg.graph = kgraph::select_key_relationships(triples, phrases, nouns.nouns,
                                                cfg.hyperparameters.l_phrase);
    kg.key_nouns = nouns.nouns;
    kg.gamma = kgraph::gamma_scores(nouns.nouns, input_doc);
    std::set<std::string> lemmas, vocab;
    for (const auto& k : nouns.nouns) lemmas.insert(k.lemma);
    for (const auto& s : input_doc.sentences)
      for (const auto& t : s.tokens) vocab.insert(t.lemma);
    for (const auto& [w, d] : semantics::depth_scores(lemmas, vocab))
      kg.h_complement[w] = d.h_complement;
    save_artifact(kg_path, kg_to_json(kg), hash);
    statuses.push_back({"kg", kg_path, false});
  }

  // ---- bdd ----
  const std::string bdd_path = artifact("bdd.json");
  bdd::BDD diagram;
  if (auto cached = load_cached(bdd_path, hash)) {
    diagram = bdd::bdd_from_json(*cached);
    statuses.push_back({"bdd", bdd_path, true});
  } else {
    auto attr_backend = backends::make_attribute_extractor(cfg.backends.attribute_extractor,
                                                           cfg.paths.prompt_template);
    auto base = bdd::build_bdd(kg.graph, input_doc, *attr_backend,
                               cfg.hyperparameters.sigma_rel_difference);
    diagram = bdd::augment(base, {kg.gamma, kg.h_complement});
    save_artifact(bdd_path, bdd::to_json(diagram), hash);
    write_file(artifact("bdd.puml"), bdd::emit_plantuml(diagram));
    statuses.push_back({"bdd", bdd_path, false});
  }

  auto embedder = semantics::make_embedder(cfg.backends.embedder);

  // ---- score ----
  if (inputs.truth_path) {
    const std::string report_path = artifact("report.json");
    if (auto cached = load_cached(report_path, hash)) {
      statuses.push_back({"score", report_path, true});
    } else {
      auto truth = bdd::bdd_from_json(json::parse(read_file(*inputs.truth_path)));
      auto report = scoring::score_bdd(diagram, truth, cfg.hyperparameters.sigma_block,
                                       cfg.hyperparameters.sigma_attribute, *embedder);
      save_artifact(report_path, scoring::to_json(report), hash);
      statuses.push_back({"score", report_path, false});
    }
  }

  // ---- codegen ----
  const std::string build_dir = artifact("build");
  const std::string plan_path = (fs::path(build_dir) / "system_plan.json").string();
  json system_plan;
  if (auto cached = load_cached(plan_path, hash)) {
    system_plan = *cached;
    statuses.push_back({"codegen", build_dir, true});
  } else {
    auto registry = codegen::load_registry(cfg.paths.registry);
    auto constants = codegen::load_constants(cfg.paths.constants);
    codegen::CodegenOptions opts;
    opts.mask = cfg.hyperparameters.mask;
    opts.sigma_func = cfg.hyperparameters.sigma_func;
    opts.sigma_attribute = cfg.hyperparameters.sigma_attribute;
    auto result = codegen::generate_tree(diagram, registry, constants, *embedder, opts);
    result.system_plan["config_hash"] = hash;
    codegen::write_tree(result, build_dir);
    system_plan = result.system_plan;
    statuses.push_back({"codegen", build_dir, false});
  }

  // ---- simulate (reference evaluator; hermetic) ----
  const std::string traj_meta = artifact("traj.json");
  if (auto cached = load_cached(traj_meta, hash)) {
    statuses.push_back({"simulate", artifact("traj.csv"), true});
  } else {
    simrun::SimConfig sim;
    sim.time_step = inputs.time_step;
    sim.total_time = inputs.total_time;
    sim.initial_conditions = inputs.initial_conditions;
    auto traj = simrun::run_reference(system_plan, sim);
    if (!traj.time.empty()) {
      simrun::export_trajectory(traj, "csv", artifact("traj.csv"));
      simrun::plot_trajectory(traj, artifact("traj.svg"));
    }
    save_artifact(traj_meta, simrun::to_json(traj), hash);
    statuses.push_back({"simulate", artifact("traj.csv"), false});
  }

  return statuses;
}

}  // namespace t2m::pipeline
