// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/bdd.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include "t2m/semantics.hpp"
#include "t2m/textprep.hpp"

namespace t2m::bdd {

Block* BDD::find(const std::string& label) {
  for (auto& b : blocks)
    if (b.label == label) return &b;
  return nullptr;
}

const Block* BDD::find(const std::string& label) const {
  for (const auto& b : blocks)
    if (b.label == label) return &b;
  return nullptr;
}

namespace {

const std::map<std::string, std::string>& unit_normalization() {
  static const std::map<std::string, std::string> m = {
      {"kilogram", "kg"}, {"kilograms", "kg"}, {"kg", "kg"},
      {"gram", "g"},      {"grams", "g"},      {"g", "g"},
      {"meter", "meters"},  {"meters", "meters"}, {"metre", "meters"},
      {"metres", "meters"}, {"m", "m"},
      {"centimeter", "cm"}, {"centimeters", "cm"}, {"cm", "cm"},
      {"second", "s"},    {"seconds", "s"},    {"s", "s"},
      {"newton", "N"},    {"newtons", "N"},
      {"degree", "deg"},  {"degrees", "deg"},
      {"radian", "rad"},  {"radians", "rad"},
      {"hertz", "Hz"},    {"kelvin", "K"},
  };
  return m;
}

std::string unit_category(const std::string& normalized) {
  if (normalized == "kg" || normalized == "g") return "mass";
  if (normalized == "meters" || normalized == "m" || normalized == "cm") return "length";
  if (normalized == "s") return "time";
  if (normalized == "deg" || normalized == "rad") return "angle";
  return "";
}

bool parses_as_number(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end && *end == '\0';
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
  while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
  return s;
}

bool is_jj(const std::string& tag) { return tag.rfind("JJ", 0) == 0; }
bool is_nn(const std::string& tag) { return tag.rfind("NN", 0) == 0; }
bool is_be(const std::string& w) {
  return w == "is" || w == "are" || w == "was" || w == "were" || w == "be";
}

}  // namespace

std::vector<Attribute> PatternAttributeExtractor::extract(const std::string& block_label,
                                                          const std::string& context) {
  (void)block_label;
  std::vector<Attribute> out;

  // "approximated as/by X [for Y]" claims its span first, so the token
  // patterns below don't re-describe the same words.
  std::string remainder = context;
  static const std::regex approx_re(
      R"(approximated\s+(?:as|by)\s+([^,.;]+?)(?:\s+for\s+([^,.;]+?))?\s*[.,;]?\s*$)",
      std::regex::icase);
  std::smatch m;
  std::vector<Attribute> approx_attrs;
  if (std::regex_search(context, m, approx_re)) {
    std::string value = trim(to_lower(m[1].str()));
    // A trailing word repeated from earlier in the sentence ("simple harmonic
    // motion" describing "the motion") is the described noun, not the value.
    auto words = split_ws(value);
    if (words.size() > 1) {
      std::string head = to_lower(context.substr(0, (size_t)m.position(0)));
      auto head_toks = textprep::tokenize_words(head);
      if (std::find(head_toks.begin(), head_toks.end(), words.back()) != head_toks.end()) {
        words.pop_back();
        value = join(words, " ");
      }
    }
    approx_attrs.push_back({"approximation", value, "", "descriptive", {}});
    if (m[2].matched)
      approx_attrs.push_back({"condition", trim(to_lower(m[2].str())), "", "descriptive", {}});
    remainder = context.substr(0, (size_t)m.position(0));
  }

  auto tokens = textprep::tokenize_words(remainder);
  auto tags = textprep::pos_tag(tokens);

  // "<number> <unit>" with a label inferred from the unit or nearby verb.
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    const std::string w = to_lower(tokens[i]);
    if (!parses_as_number(w)) continue;
    auto it = unit_normalization().find(to_lower(tokens[i + 1]));
    if (it == unit_normalization().end()) continue;
    std::string label;
    const std::string category = unit_category(it->second);
    if (category == "mass") label = "weight";
    else if (category == "length") label = "length";
    else if (!category.empty()) label = category;
    else label = "value";
    // "weighs 2 kilograms" wins over the unit-derived label.
    if (i > 0 && (to_lower(tokens[i - 1]) == "weighs" || to_lower(tokens[i - 1]) == "weigh"))
      label = "weight";
    out.push_back({label, w, it->second, "numeric", {}});
  }

  // Copular adjective: "<noun> is <adjective>".
  for (size_t i = 0; i + 2 < tokens.size(); ++i) {
    if (!is_nn(tags[i]) || !is_be(to_lower(tokens[i + 1]))) continue;
    size_t j = i + 2;
    if (j < tokens.size() && tags[j] == "RB") ++j;
    if (j < tokens.size() && is_jj(tags[j])) {
      out.push_back({textprep::lemmatize(tokens[i], tags[i]), to_lower(tokens[j]), "",
                     "descriptive", {}});
    }
  }

  // Adjective-noun: each adjective of a "(JJ)+ NN" run describes the noun.
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!is_jj(tags[i])) continue;
    size_t j = i + 1;
    while (j < tokens.size() && is_jj(tags[j])) ++j;
    if (j < tokens.size() && is_nn(tags[j])) {
      out.push_back({textprep::lemmatize(tokens[j], tags[j]), to_lower(tokens[i]), "",
                     "descriptive", {}});
    }
  }

  for (auto& a : approx_attrs) out.push_back(std::move(a));

  return out;
}

std::vector<Attribute> extract_attributes(const std::string& block_label,
                                          const std::vector<SourceSentence>& context_sentences,
                                          AttributeExtractor& backend) {
  std::vector<Attribute> out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& s : context_sentences) {
    auto attrs = backend.extract(block_label, s.text);
    for (auto& a : attrs) {
      if (a.label.empty()) continue;
      if (!seen.insert({a.label, a.value, a.unit}).second) continue;
      a.source_sentence = {s.doc_id, s.index};
      out.push_back(std::move(a));
    }
  }
  return out;
}

namespace {

// Whitespace-token subsequence containment (contiguous), not raw substring.
bool token_contains(const std::string& outer, const std::string& inner) {
  auto o = split_ws(outer);
  auto in = split_ws(inner);
  if (in.empty() || in.size() >= o.size()) return false;
  for (size_t i = 0; i + in.size() <= o.size(); ++i) {
    bool all = true;
    for (size_t j = 0; j < in.size(); ++j)
      if (o[i + j] != in[j]) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

double score_of(const std::map<std::string, double>& scores, const std::string& label) {
  auto it = scores.find(label);
  return it == scores.end() ? 0.0 : it->second;
}

}  // namespace

MappedRelationship map_relationship(const kgraph::Edge& edge,
                                    const std::map<std::string, double>& phrase_scores,
                                    double sigma_rel_difference) {
  MappedRelationship out;
  out.operation_subject = edge.subject;
  out.operation_name = edge.relation;
  TypedRelationship& rel = out.relationship;
  rel.augmented = false;

  if (semantics::is_composite_relation(edge.relation)) {
    rel = {"composite", edge.object, edge.subject, false};
    return out;
  }
  if (token_contains(edge.subject, edge.object)) {
    rel = {"generalization", edge.subject, edge.object, false};
    return out;
  }
  if (token_contains(edge.object, edge.subject)) {
    rel = {"generalization", edge.object, edge.subject, false};
    return out;
  }
  const double ls = score_of(phrase_scores, edge.subject);
  const double lo = score_of(phrase_scores, edge.object);
  if (std::abs(ls - lo) > sigma_rel_difference) {
    if (ls < lo)
      rel = {"composite", edge.subject, edge.object, false};
    else
      rel = {"composite", edge.object, edge.subject, false};
    return out;
  }
  rel = {"reference", edge.subject, edge.object, false};
  return out;
}

namespace {

void add_relationship(BDD& bdd, const TypedRelationship& rel) {
  if (rel.from == rel.to) return;
  for (const auto& r : bdd.relationships)
    if (r.kind == rel.kind && r.from == rel.from && r.to == rel.to) return;
  bdd.relationships.push_back(rel);
  if (rel.kind == "composite") {
    if (Block* whole = bdd.find(rel.to)) {
      auto& parts = whole->parts;
      if (std::find(parts.begin(), parts.end(), rel.from) == parts.end())
        parts.push_back(rel.from);
    }
  }
}

std::vector<SourceSentence> block_sources(const std::string& label,
                                          const kgraph::KnowledgeGraph& kg,
                                          const textprep::PreprocessedDocument& doc) {
  std::set<int> indices;
  for (const auto& e : kg.edges)
    if (e.subject == label || e.object == label) indices.insert(e.sentence_ref.sentence_index);
  if (indices.empty()) {
    // Phrase never survived into an edge: fall back to sentences containing
    // every word of the phrase.
    auto words = split_ws(label);
    for (const auto& s : doc.sentences) {
      auto lemmas = textprep::filtered_lemmas(s);
      bool all = true;
      for (const auto& w : words)
        if (std::find(lemmas.begin(), lemmas.end(), w) == lemmas.end()) {
          all = false;
          break;
        }
      if (all) indices.insert(s.index);
    }
  }
  std::vector<SourceSentence> out;
  for (int i : indices)
    if (i >= 0 && i < (int)doc.sentences.size())
      out.push_back({doc.doc_id, i, doc.sentences[i].original});
  return out;
}

}  // namespace

BDD build_bdd(const kgraph::KnowledgeGraph& kg, const textprep::PreprocessedDocument& doc,
              AttributeExtractor& attr_backend, double sigma_rel_difference) {
  BDD bdd;
  std::map<std::string, double> scores;
  for (const auto& p : kg.nodes) scores[p.text()] = p.importance;

  for (const auto& p : kg.nodes) {
    Block b;
    b.label = p.text();
    b.source_sentences = block_sources(b.label, kg, doc);
    b.attributes = extract_attributes(b.label, b.source_sentences, attr_backend);
    bdd.blocks.push_back(std::move(b));
  }

  auto edges = kg.edges;
  std::sort(edges.begin(), edges.end(), [](const kgraph::Edge& a, const kgraph::Edge& b) {
    if (!(a.sentence_ref == b.sentence_ref)) return a.sentence_ref < b.sentence_ref;
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.object < b.object;
  });
  for (const auto& e : edges) {
    auto mapped = map_relationship(e, scores, sigma_rel_difference);
    if (Block* subj = bdd.find(mapped.operation_subject))
      subj->operations.push_back({mapped.operation_name, e.sentence_ref});
    if (bdd.find(mapped.relationship.from) && bdd.find(mapped.relationship.to))
      add_relationship(bdd, mapped.relationship);
  }

  std::vector<std::string> originals;
  for (const auto& s : doc.sentences) originals.push_back(s.original);
  bdd.source_text[doc.doc_id] = originals;
  return bdd;
}

namespace {

std::vector<std::string> top_level_labels(const BDD& bdd) {
  std::set<std::string> excluded;
  for (const auto& r : bdd.relationships)
    if (r.kind == "composite" || r.kind == "generalization") excluded.insert(r.from);
  std::vector<std::string> out;
  for (const auto& b : bdd.blocks)
    if (!b.augmented && !excluded.count(b.label)) out.push_back(b.label);
  std::sort(out.begin(), out.end());
  return out;
}

double gamma_of(const AugmentContext& ctx, const std::string& word) {
  if (auto it = ctx.gamma.find(word); it != ctx.gamma.end()) return it->second;
  if (auto it = ctx.h_complement.find(word); it != ctx.h_complement.end()) return it->second;
  return 0.0;
}

std::string synset_display_name(const std::string& synset_id, const semantics::LexDB& db) {
  const auto* s = db.get(synset_id);
  std::string lemma = s && !s->lemmas.empty() ? s->lemmas.front() : synset_id;
  std::replace(lemma.begin(), lemma.end(), '_', ' ');
  return lemma;
}

}  // namespace

BDD augment(const BDD& in, const AugmentContext& ctx) {
  BDD out = in;
  const auto& db = semantics::LexDB::instance();

  auto ensure_augmented_block = [&out](const std::string& label) {
    if (!out.find(label)) {
      Block b;
      b.label = label;
      b.augmented = true;
      out.blocks.push_back(std::move(b));
    }
  };

  // Phrase abstraction: peel the lowest-gamma word until a unigram remains.
  for (const auto& label : top_level_labels(out)) {
    auto words = split_ws(label);
    std::string current = label;
    while (words.size() > 1) {
      size_t drop = 0;
      for (size_t i = 1; i < words.size(); ++i)
        if (gamma_of(ctx, words[i]) < gamma_of(ctx, words[drop])) drop = i;
      words.erase(words.begin() + drop);
      const std::string reduced = join(words, " ");
      ensure_augmented_block(reduced);
      add_relationship(out, {"generalization", current, reduced, true});
      current = reduced;
    }
  }

  // Taxonomy links + lowest common hypernyms among top-level unigrams.
  std::vector<std::string> unigrams;
  for (const auto& label : top_level_labels(out))
    if (split_ws(label).size() == 1 && !out.find(label)->augmented) unigrams.push_back(label);
  // Re-include unigrams produced by abstraction that stayed top-level.
  for (const auto& b : out.blocks)
    if (b.augmented && split_ws(b.label).size() == 1 &&
        std::find(unigrams.begin(), unigrams.end(), b.label) == unigrams.end()) {
      bool top = true;
      for (const auto& r : out.relationships)
        if ((r.kind == "composite" || r.kind == "generalization") && r.from == b.label) top = false;
      if (top) unigrams.push_back(b.label);
    }
  std::sort(unigrams.begin(), unigrams.end());

  for (size_t i = 0; i < unigrams.size(); ++i)
    for (size_t j = i + 1; j < unigrams.size(); ++j) {
      auto links = semantics::taxonomy_links(unigrams[i], unigrams[j], db);
      if (links.generalization == "a_specializes_b")
        add_relationship(out, {"generalization", unigrams[i], unigrams[j], true});
      else if (links.generalization == "b_specializes_a")
        add_relationship(out, {"generalization", unigrams[j], unigrams[i], true});
      if (links.composite == "a_part_of_b")
        add_relationship(out, {"composite", unigrams[i], unigrams[j], true});
      else if (links.composite == "b_part_of_a")
        add_relationship(out, {"composite", unigrams[j], unigrams[i], true});
    }

  for (size_t i = 0; i < unigrams.size(); ++i)
    for (size_t j = i + 1; j < unigrams.size(); ++j) {
      auto lch = semantics::lowest_common_hypernym({unigrams[i], unigrams[j]}, db);
      if (!lch) continue;
      const std::string name = synset_display_name(*lch, db);
      if (name == unigrams[i] || name == unigrams[j]) continue;  // direct taxonomy case
      ensure_augmented_block(name);
      add_relationship(out, {"generalization", unigrams[i], name, true});
      add_relationship(out, {"generalization", unigrams[j], name, true});
    }

  return out;
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::set<std::string> reachable_under(const BDD& bdd, const std::string& root) {
  std::set<std::string> seen = {root};
  std::vector<std::string> queue = {root};
  while (!queue.empty()) {
    const std::string cur = queue.back();
    queue.pop_back();
    for (const auto& r : bdd.relationships)
      if (r.to == cur && !seen.count(r.from)) {
        seen.insert(r.from);
        queue.push_back(r.from);
      }
  }
  return seen;
}

}  // namespace

std::string emit_plantuml(const BDD& bdd, const std::optional<std::string>& root) {
  std::set<std::string> keep;
  if (root) {
    if (!bdd.find(*root)) throw std::runtime_error("unknown root block: " + *root);
    keep = reachable_under(bdd, *root);
  } else {
    for (const auto& b : bdd.blocks) keep.insert(b.label);
  }

  std::ostringstream out;
  out << "@startuml\n";
  for (const auto& b : bdd.blocks) {
    if (!keep.count(b.label)) continue;
    out << "class " << quoted(b.label);
    if (b.augmented) out << " #line.dashed";
    if (b.attributes.empty() && b.operations.empty()) {
      out << "\n";
      continue;
    }
    out << " {\n";
    for (const auto& a : b.attributes) {
      out << "  " << a.label << " : " << a.value;
      if (!a.unit.empty()) out << " " << a.unit;
      out << "\n";
    }
    for (const auto& o : b.operations) out << "  +" << o.name << "()\n";
    out << "}\n";
  }
  for (const auto& r : bdd.relationships) {
    if (!keep.count(r.from) || !keep.count(r.to)) continue;
    if (r.kind == "composite")
      out << quoted(r.to) << " *-- " << quoted(r.from) << "\n";
    else if (r.kind == "generalization")
      out << quoted(r.to) << " <|-- " << quoted(r.from) << "\n";
    else
      out << quoted(r.from) << " --> " << quoted(r.to) << "\n";
  }
  out << "@enduml\n";
  return out.str();
}

BDD parse_plantuml(const std::string& text) {
  BDD bdd;
  std::istringstream in(text);
  std::string line;
  Block* current = nullptr;
  static const std::regex class_re(R"=(^class "([^"]+)"( #line\.dashed)?( \{)?\s*$)=");
  static const std::regex edge_re(R"=(^"([^"]+)" (\*--|<\|--|-->) "([^"]+)"\s*$)=");
  static const std::regex op_re(R"=(^\s*\+(.+)\(\)\s*$)=");
  static const std::regex attr_re(R"=(^\s*([^:]+?)\s*:\s*(.+?)\s*$)=");
  while (std::getline(in, line)) {
    std::smatch m;
    if (line == "@startuml" || line == "@enduml" || line.empty()) continue;
    if (current) {
      if (line == "}") {
        current = nullptr;
        continue;
      }
      if (std::regex_match(line, m, op_re)) {
        current->operations.push_back({m[1].str(), {}});
        continue;
      }
      if (std::regex_match(line, m, attr_re)) {
        Attribute a;
        a.label = m[1].str();
        a.value = m[2].str();
        a.kind = parses_as_number(a.value) ? "numeric" : "descriptive";
        current->attributes.push_back(std::move(a));
        continue;
      }
      continue;
    }
    if (std::regex_match(line, m, class_re)) {
      Block b;
      b.label = m[1].str();
      b.augmented = m[2].matched;
      bdd.blocks.push_back(std::move(b));
      if (m[3].matched) current = &bdd.blocks.back();
      continue;
    }
    if (std::regex_match(line, m, edge_re)) {
      const std::string arrow = m[2].str();
      if (arrow == "*--")
        add_relationship(bdd, {"composite", m[3].str(), m[1].str(), false});
      else if (arrow == "<|--")
        add_relationship(bdd, {"generalization", m[3].str(), m[1].str(), false});
      else
        add_relationship(bdd, {"reference", m[1].str(), m[3].str(), false});
    }
  }
  return bdd;
}

json to_json(const BDD& bdd) {
  json blocks = json::array();
  for (const auto& b : bdd.blocks) {
    json attrs = json::array();
    for (const auto& a : b.attributes)
      attrs.push_back({{"label", a.label},
                       {"value", a.value},
                       {"unit", a.unit},
                       {"kind", a.kind},
                       {"source_sentence",
                        {{"doc_id", a.source_sentence.doc_id},
                         {"index", a.source_sentence.sentence_index}}}});
    json ops = json::array();
    for (const auto& o : b.operations)
      ops.push_back({{"name", o.name},
                     {"source_sentence",
                      {{"doc_id", o.source_sentence.doc_id},
                       {"index", o.source_sentence.sentence_index}}}});
    json srcs = json::array();
    for (const auto& s : b.source_sentences)
      srcs.push_back({{"doc_id", s.doc_id}, {"index", s.index}, {"text", s.text}});
    blocks.push_back({{"label", b.label},
                      {"attributes", attrs},
                      {"operations", ops},
                      {"parts", b.parts},
                      {"augmented", b.augmented},
                      {"source_sentences", srcs}});
  }
  json rels = json::array();
  for (const auto& r : bdd.relationships)
    rels.push_back(
        {{"kind", r.kind}, {"from", r.from}, {"to", r.to}, {"augmented", r.augmented}});
  json src_text = json::object();
  for (const auto& [doc_id, sentences] : bdd.source_text) src_text[doc_id] = sentences;
  return {{"blocks", blocks}, {"relationships", rels}, {"source_text", src_text}};
}

BDD bdd_from_json(const json& j) {
  BDD bdd;
  for (const auto& jb : j.value("blocks", json::array())) {
    Block b;
    b.label = jb.at("label").get<std::string>();
    b.augmented = jb.value("augmented", false);
    for (const auto& ja : jb.value("attributes", json::array())) {
      Attribute a;
      a.label = ja.at("label").get<std::string>();
      a.value = ja.value("value", "");
      a.unit = ja.value("unit", "");
      a.kind = ja.value("kind", parses_as_number(a.value) ? "numeric" : "descriptive");
      if (ja.contains("source_sentence")) {
        a.source_sentence.doc_id = ja["source_sentence"].value("doc_id", "");
        a.source_sentence.sentence_index = ja["source_sentence"].value("index", 0);
      }
      b.attributes.push_back(std::move(a));
    }
    for (const auto& jo : jb.value("operations", json::array())) {
      Operation o;
      if (jo.is_string()) {
        o.name = jo.get<std::string>();
      } else {
        o.name = jo.at("name").get<std::string>();
        if (jo.contains("source_sentence")) {
          o.source_sentence.doc_id = jo["source_sentence"].value("doc_id", "");
          o.source_sentence.sentence_index = jo["source_sentence"].value("index", 0);
        }
      }
      b.operations.push_back(std::move(o));
    }
    b.parts = jb.value("parts", std::vector<std::string>{});
    for (const auto& js : jb.value("source_sentences", json::array())) {
      SourceSentence s;
      s.doc_id = js.value("doc_id", "");
      s.index = js.value("index", 0);
      s.text = js.value("text", "");
      b.source_sentences.push_back(std::move(s));
    }
    bdd.blocks.push_back(std::move(b));
  }
  for (const auto& jr : j.value("relationships", json::array())) {
    TypedRelationship r;
    r.kind = jr.at("kind").get<std::string>();
    r.from = jr.at("from").get<std::string>();
    r.to = jr.at("to").get<std::string>();
    r.augmented = jr.value("augmented", false);
    bdd.relationships.push_back(std::move(r));
  }
  if (j.contains("source_text"))
    for (auto it = j["source_text"].begin(); it != j["source_text"].end(); ++it)
      bdd.source_text[it.key()] = it.value().get<std::vector<std::string>>();
  return bdd;
}

}  // namespace t2m::bdd
