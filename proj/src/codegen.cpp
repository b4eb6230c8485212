// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/codegen.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>

#include "t2m/summarize.hpp"
#include "t2m/textprep.hpp"

namespace t2m::codegen {

namespace fs = std::filesystem;

std::vector<EquationTemplate> load_registry(const std::string& path) {
  json j = json::parse(read_file(path));
  std::vector<EquationTemplate> out;
  for (const auto& e : j) {
    EquationTemplate t;
    t.id = e.at("id").get<std::string>();
    t.name = e.at("name").get<std::string>();
    t.description = e.at("description").get<std::string>();
    t.states = e.at("states").get<std::vector<std::string>>();
    t.parameters = e.at("parameters").get<std::vector<std::string>>();
    t.source_template = e.at("source_template").get<std::string>();
    t.numeric_semantics_id = e.at("numeric_semantics_id").get<std::string>();
    out.push_back(std::move(t));
  }
  return out;
}

ConstantsDB load_constants(const std::string& path) {
  json j = json::parse(read_file(path));
  ConstantsDB db;
  for (auto it = j.begin(); it != j.end(); ++it) {
    ConstantEntry e;
    e.value = it.value().at("value").get<double>();
    e.unit = it.value().value("unit", "");
    db.entries[to_lower(it.key())] = e;
  }
  return db;
}

std::string pascal_case(const std::string& label) {
  std::string out;
  bool start = true;
  for (char c : label) {
    if (!std::isalnum((unsigned char)c)) {
      start = true;
      continue;
    }
    if (start && std::isdigit((unsigned char)c) && out.empty()) out += 'X';
    out += start ? char(std::toupper((unsigned char)c)) : c;
    start = false;
  }
  return out;
}

namespace {

bool parses_as_number(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end && *end == '\0';
}

std::string number_literal(double v) { return json(v).dump(); }

// --------------------------------------------------------------------------
// File tree planning
// --------------------------------------------------------------------------

struct EdgeIndex {
  std::map<std::string, std::vector<std::string>> parts_of;       // whole -> parts
  std::set<std::string> part_labels;
  std::map<std::string, std::vector<std::string>> associates_of;  // target -> sources
  std::set<std::string> has_outgoing;                             // gen/ref sources
};

EdgeIndex index_edges(const bdd::BDD& d) {
  EdgeIndex idx;
  auto concrete = [&](const std::string& label) {
    const auto* b = d.find(label);
    return b && !b->augmented;
  };
  for (const auto& r : d.relationships) {
    if (!concrete(r.from) || !concrete(r.to)) continue;
    if (r.kind == "composite") {
      idx.parts_of[r.to].push_back(r.from);
      idx.part_labels.insert(r.from);
    } else {  // generalization or reference: source placed next to target
      idx.associates_of[r.to].push_back(r.from);
      idx.has_outgoing.insert(r.from);
    }
  }
  for (auto& [k, v] : idx.parts_of) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& [k, v] : idx.associates_of) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return idx;
}

void check_composite_cycles(const EdgeIndex& idx) {
  std::set<std::string> done;
  std::vector<std::string> stack;
  std::function<void(const std::string&)> visit = [&](const std::string& whole) {
    auto pos = std::find(stack.begin(), stack.end(), whole);
    if (pos != stack.end()) {
      std::vector<std::string> cycle(pos, stack.end());
      cycle.push_back(whole);
      throw std::runtime_error("composite cycle: " + join(cycle, " -> "));
    }
    if (done.count(whole)) return;
    stack.push_back(whole);
    if (auto it = idx.parts_of.find(whole); it != idx.parts_of.end())
      for (const auto& p : it->second) visit(p);
    stack.pop_back();
    done.insert(whole);
  };
  for (const auto& [whole, _] : idx.parts_of) visit(whole);
}

struct Planner {
  const bdd::BDD& d;
  EdgeIndex idx;
  std::set<std::string> emitted;
  std::map<std::string, std::string> paths;

  void place(const std::string& label, FileTreeNode& dir, const std::string& prefix) {
    if (emitted.count(label)) return;
    emitted.insert(label);
    const std::string cls = pascal_case(label);
    dir.children.push_back({"file", cls + ".py", label, {}});
    paths[label] = prefix + cls + ".py";

    FileTreeNode* target_dir = &dir;
    std::string target_prefix = prefix;
    auto pit = idx.parts_of.find(label);
    if (pit != idx.parts_of.end() && !pit->second.empty()) {
      dir.children.push_back({"folder", cls + "_parts", std::nullopt, {}});
      target_dir = &dir.children.back();
      target_prefix = prefix + cls + "_parts/";
      for (const auto& part : pit->second) place(part, *target_dir, target_prefix);
    }
    if (auto ait = idx.associates_of.find(label); ait != idx.associates_of.end())
      for (const auto& a : ait->second)
        if (!idx.part_labels.count(a)) place(a, *target_dir, target_prefix);
  }
};

}  // namespace

FileTreePlan plan_file_tree(const bdd::BDD& diagram) {
  Planner p{diagram, index_edges(diagram)};
  check_composite_cycles(p.idx);

  std::vector<std::string> roots;
  for (const auto& b : diagram.blocks)
    if (!b.augmented && !p.idx.part_labels.count(b.label) && !p.idx.has_outgoing.count(b.label))
      roots.push_back(b.label);
  std::sort(roots.begin(), roots.end());

  FileTreePlan plan;
  plan.root = {"folder", "", std::nullopt, {}};
  for (const auto& r : roots) p.place(r, plan.root, "");
  // Any block left stranded (e.g. its only edges target augmented blocks that
  // were filtered out) still gets exactly one file, at the root.
  std::vector<std::string> leftovers;
  for (const auto& b : diagram.blocks)
    if (!b.augmented && !p.emitted.count(b.label)) leftovers.push_back(b.label);
  std::sort(leftovers.begin(), leftovers.end());
  for (const auto& l : leftovers) p.place(l, plan.root, "");

  plan.root.children.push_back({"file", "System.py", std::nullopt, {}});
  plan.file_paths = std::move(p.paths);
  return plan;
}

// --------------------------------------------------------------------------
// Skeleton generation
// --------------------------------------------------------------------------

namespace {

std::string tokenized(const std::string& sentence) {
  return join(textprep::tokenize_words(sentence), " ");
}

// Sentences joined back-to-back, each in tokenized form, after an extractive
// pass that deduplicates while preserving original order.
std::string docstring_of(const std::vector<std::string>& sentences) {
  if (sentences.empty()) return "";
  auto kept = summarize::rank_sentences(sentences, (int)sentences.size());
  std::string out;
  for (const auto& s : kept) out += tokenized(s);
  return out;
}

std::vector<std::string> mask_expand(const kgraph::SentenceRef& ref, const bdd::BDD& diagram,
                                     std::pair<int, int> mask) {
  auto it = diagram.source_text.find(ref.doc_id);
  if (it == diagram.source_text.end()) return {};
  const auto& sentences = it->second;
  int lo = std::max(0, ref.sentence_index - mask.first);
  int hi = std::min((int)sentences.size() - 1, ref.sentence_index + mask.second);
  std::vector<std::string> out;
  for (int i = lo; i <= hi; ++i) out.push_back(sentences[i]);
  return out;
}

std::string unique_name(std::set<std::string>& used, std::string name) {
  if (name.empty()) name = "X";
  if (!used.insert(name).second) {
    int n = 2;
    while (!used.insert(name + "_" + std::to_string(n)).second) ++n;
    name += "_" + std::to_string(n);
  }
  return name;
}

}  // namespace

ClassSpec generate_class_skeleton(const bdd::Block& block, const bdd::BDD& diagram,
                                  std::pair<int, int> mask) {
  ClassSpec spec;
  spec.name = pascal_case(block.label);

  std::vector<std::string> own;
  for (const auto& s : block.source_sentences) own.push_back(s.text);
  spec.docstring = docstring_of(own);

  std::set<std::string> used_attrs;
  for (const auto& a : block.attributes) {
    std::string name = unique_name(used_attrs, pascal_case(a.label));
    std::string literal;
    if (a.kind == "numeric" || parses_as_number(a.value)) {
      literal = a.value;
      if (!a.unit.empty()) literal += "  # " + a.unit;
    } else {
      literal = "\"" + a.value + "\"";
    }
    spec.attribute_assignments.emplace_back(name, literal);
  }

  std::vector<std::string> parents;
  for (const auto& r : diagram.relationships) {
    if (r.kind != "generalization" || r.from != block.label) continue;
    const auto* target = diagram.find(r.to);
    if (target && !target->augmented) parents.push_back(r.to);
  }
  std::sort(parents.begin(), parents.end());
  if (!parents.empty()) spec.parent = pascal_case(parents.front());

  for (const auto& part : block.parts) {
    const auto* child = diagram.find(part);
    if (child && !child->augmented) spec.composed_children.push_back(pascal_case(part));
  }
  std::sort(spec.composed_children.begin(), spec.composed_children.end());

  std::set<std::string> used_ops;
  for (const auto& op : block.operations) {
    OperationSpec o;
    o.name = unique_name(used_ops, pascal_case(op.name));
    auto context = mask_expand(op.source_sentence, diagram, mask);
    if (context.empty()) context = own;
    o.docstring = docstring_of(context);
    spec.operations.push_back(std::move(o));
  }

  if (spec.parent) spec.imports.push_back("from " + *spec.parent + " import " + *spec.parent);
  for (const auto& c : spec.composed_children)
    spec.imports.push_back("from " + spec.name + "_parts." + c + " import " + c);
  return spec;
}

std::optional<EquationTemplate> match_equation_template(
    const std::string& docstring, const std::vector<EquationTemplate>& registry,
    double sigma_func, semantics::Embedder& embedder, double* match_score) {
  if (registry.empty()) throw std::invalid_argument("match_equation_template: empty registry");
  const EquationTemplate* best = nullptr;
  double best_cs = sigma_func;
  for (const auto& t : registry) {
    double cs = semantics::text_similarity(embedder, docstring, t.description);
    if (cs > best_cs) {
      best_cs = cs;
      best = &t;
    }
  }
  if (!best) return std::nullopt;
  if (match_score) *match_score = best_cs;
  return *best;
}

std::map<std::string, Binding> resolve_parameters(const EquationTemplate& tmpl,
                                                  const bdd::Block& block,
                                                  const bdd::BDD& diagram,
                                                  const ConstantsDB& constants,
                                                  double sigma_attribute,
                                                  semantics::Embedder& embedder) {
  std::map<std::string, Binding> out;
  for (const auto& p : tmpl.parameters) {
    Binding b;
    b.parameter = p;

    if (auto it = constants.entries.find(to_lower(p)); it != constants.entries.end()) {
      b.expression = number_literal(it->second.value);
      b.kind = "constant";
      b.numeric_value = it->second.value;
      out[p] = std::move(b);
      continue;
    }

    const bdd::Attribute* best_own = nullptr;
    double best_cs = sigma_attribute;
    for (const auto& a : block.attributes) {
      double cs = std::max(0.0, semantics::text_similarity(embedder, a.label, p));
      if (cs > best_cs) {
        best_cs = cs;
        best_own = &a;
      }
    }
    if (best_own) {
      b.expression = "self." + pascal_case(best_own->label);
      b.kind = "attribute";
      if (parses_as_number(best_own->value)) b.numeric_value = std::atof(best_own->value.c_str());
      out[p] = std::move(b);
      continue;
    }

    const bdd::Block* best_block = nullptr;
    const bdd::Attribute* best_attr = nullptr;
    best_cs = sigma_attribute;
    for (const auto& other : diagram.blocks) {
      if (other.augmented || other.label == block.label) continue;
      for (const auto& a : other.attributes) {
        if (!(a.kind == "numeric" || parses_as_number(a.value))) continue;
        double cs = std::max(0.0, semantics::text_similarity(embedder, a.label, p));
        if (cs > best_cs) {
          best_cs = cs;
          best_block = &other;
          best_attr = &a;
        }
      }
    }
    if (best_block) {
      b.expression = pascal_case(best_block->label) + "." + pascal_case(best_attr->label);
      b.kind = "cross_class";
      b.numeric_value = std::atof(best_attr->value.c_str());
      b.import_block = best_block->label;
      out[p] = std::move(b);
      continue;
    }

    b.expression = "1  # PLACEHOLDER: parameter '" + p + "' unresolved, defaulted to 1";
    b.kind = "placeholder";
    b.numeric_value = 1.0;
    out[p] = std::move(b);
  }
  return out;
}

// --------------------------------------------------------------------------
// Code emission
// --------------------------------------------------------------------------

namespace {

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
  size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

std::string indent_block(const std::string& text, const std::string& pad) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) out += line.empty() ? "\n" : pad + line + "\n";
  return out;
}

std::string render_template(const EquationTemplate& tmpl, const std::string& function_name,
                            const std::string& docstring,
                            const std::map<std::string, Binding>& bindings) {
  std::string body = tmpl.source_template;
  body = replace_all(body, "{{function_name}}", function_name);
  body = replace_all(body, "{{function_prompt}}", docstring);
  for (const auto& [p, b] : bindings) body = replace_all(body, "{{" + p + "}}", b.expression);
  if (body.find("{{") != std::string::npos)
    throw std::runtime_error("unexpanded placeholder in rendered template " + tmpl.id);
  return body;
}

struct ComponentInfo {
  ClassSpec spec;
  bool simulatable = false;
  std::vector<std::string> states;                  // direct template states
  std::map<std::string, std::string> state_paths;   // state -> attribute path from this class
  std::optional<std::string> semantics_id;
  std::map<std::string, Binding> bindings;          // of the first matched operation
  std::string matched_op;
  std::string template_id;
  double match_score = 0.0;   // docstring-description similarity of the match
  bool numeric_ready = false; // every parameter resolved to a number (no placeholders)
};

std::string module_of(const FileTreePlan& plan, const std::string& label) {
  auto it = plan.file_paths.find(label);
  if (it == plan.file_paths.end()) return pascal_case(label);
  std::string m = it->second;
  if (m.size() > 3 && m.substr(m.size() - 3) == ".py") m = m.substr(0, m.size() - 3);
  std::replace(m.begin(), m.end(), '/', '.');
  return m;
}

ComponentInfo analyze_block(const bdd::Block& block, const bdd::BDD& diagram,
                            const std::vector<EquationTemplate>& registry,
                            const ConstantsDB& constants, semantics::Embedder& embedder,
                            const CodegenOptions& opts, std::vector<json>* log);

ComponentInfo analyze_label(const std::string& label, const bdd::BDD& diagram,
                            const std::vector<EquationTemplate>& registry,
                            const ConstantsDB& constants, semantics::Embedder& embedder,
                            const CodegenOptions& opts) {
  const auto* b = diagram.find(label);
  if (!b) throw std::runtime_error("unknown block: " + label);
  return analyze_block(*b, diagram, registry, constants, embedder, opts, nullptr);
}

ComponentInfo analyze_block(const bdd::Block& block, const bdd::BDD& diagram,
                            const std::vector<EquationTemplate>& registry,
                            const ConstantsDB& constants, semantics::Embedder& embedder,
                            const CodegenOptions& opts, std::vector<json>* log) {
  ComponentInfo info;
  info.spec = generate_class_skeleton(block, diagram, opts.mask);

  for (auto& op : info.spec.operations) {
    if (registry.empty()) break;
    double score = 0.0;
    auto tmpl = match_equation_template(op.docstring, registry, opts.sigma_func, embedder, &score);
    if (!tmpl) continue;
    auto bindings =
        resolve_parameters(*tmpl, block, diagram, constants, opts.sigma_attribute, embedder);
    op.body = render_template(*tmpl, op.name, op.docstring, bindings);
    op.template_id = tmpl->id;
    if (!info.simulatable) {
      info.simulatable = true;
      info.states = tmpl->states;
      for (const auto& s : tmpl->states) info.state_paths[s] = s;
      info.semantics_id = tmpl->numeric_semantics_id;
      info.bindings = bindings;
      info.matched_op = op.name;
      info.template_id = tmpl->id;
      info.spec.states = tmpl->states;
      info.match_score = score;
      info.numeric_ready = true;
      for (const auto& [p, b] : bindings)
        if (b.kind == "placeholder" || !b.numeric_value) info.numeric_ready = false;
    }
    if (log) {
      json placeholders = json::array();
      json bound = json::object();
      for (const auto& [p, b] : bindings) {
        bound[p] = {{"kind", b.kind}, {"expression", b.expression}};
        if (b.numeric_value) bound[p]["value"] = *b.numeric_value;
        if (b.kind == "placeholder") placeholders.push_back(p);
      }
      log->push_back({{"block", block.label},
                      {"function", op.name},
                      {"template_id", tmpl->id},
                      {"bindings", bound},
                      {"placeholders", placeholders}});
    }
  }

  // A composite parent of simulatable children simulates by delegation.
  if (!info.simulatable) {
    for (const auto& part : block.parts) {
      const auto* child = diagram.find(part);
      if (!child || child->augmented) continue;
      auto child_info = analyze_label(part, diagram, registry, constants, embedder, opts);
      if (child_info.simulatable) {
        info.simulatable = true;
        for (const auto& [s, path] : child_info.state_paths)
          info.state_paths[s] = pascal_case(part) + "." + path;
        if (!info.semantics_id) {
          info.states = child_info.states;
          info.semantics_id = child_info.semantics_id;
          info.bindings = child_info.bindings;
          info.template_id = child_info.template_id;
          info.match_score = child_info.match_score;
          info.numeric_ready = child_info.numeric_ready;
        }
      }
    }
  }
  return info;
}

std::vector<std::string> root_level_blocks(const FileTreePlan& plan);

// The System steps one component per state signature: several blocks whose
// operations match the same template would otherwise race on the same state
// names. Components with unresolved numeric parameters are never stepped.
struct SelectedComponent {
  std::string label;
  ComponentInfo info;
};

std::vector<SelectedComponent> select_simulated(const bdd::BDD& diagram, const FileTreePlan& plan,
                                                const std::vector<EquationTemplate>& registry,
                                                const ConstantsDB& constants,
                                                semantics::Embedder& embedder,
                                                const CodegenOptions& opts,
                                                std::vector<json>* log = nullptr) {
  std::map<std::string, size_t> best_by_signature;  // signature -> index into out
  std::vector<SelectedComponent> out;
  for (const auto& label : root_level_blocks(plan)) {
    auto info = analyze_label(label, diagram, registry, constants, embedder, opts);
    if (!info.simulatable) continue;
    if (!info.numeric_ready) {
      if (log)
        log->push_back(json{{"block", label},
                            {"skipped_simulation", "unresolved numeric parameters"}});
      continue;
    }
    std::vector<std::string> sig(info.states);
    std::sort(sig.begin(), sig.end());
    std::string key = join(sig, ",");
    auto it = best_by_signature.find(key);
    if (it == best_by_signature.end()) {
      best_by_signature[key] = out.size();
      out.push_back({label, std::move(info)});
    } else if (info.match_score > out[it->second].info.match_score) {
      if (log)
        log->push_back(json{{"block", out[it->second].label},
                        {"skipped_simulation", "lower template match score than " + label}});
      out[it->second] = {label, std::move(info)};
    } else if (log) {
      log->push_back({{"block", label},
                      {"skipped_simulation",
                       "lower template match score than " + out[it->second].label}});
    }
  }
  return out;
}

std::string emit_class(const ComponentInfo& info, const bdd::Block& block,
                       const bdd::BDD& diagram, const FileTreePlan& plan) {
  const ClassSpec& spec = info.spec;
  std::ostringstream out;

  // Imports recomputed from the tree plan so nested modules resolve from the
  // output root.
  std::vector<std::string> imports;
  bool needs_numpy = false;
  std::set<std::string> import_blocks;
  std::vector<std::string> parent_labels;
  for (const auto& r : diagram.relationships)
    if (r.kind == "generalization" && r.from == block.label) {
      const auto* t = diagram.find(r.to);
      if (t && !t->augmented) parent_labels.push_back(r.to);
    }
  std::sort(parent_labels.begin(), parent_labels.end());
  if (!parent_labels.empty()) import_blocks.insert(parent_labels.front());
  for (const auto& part : block.parts) {
    const auto* c = diagram.find(part);
    if (c && !c->augmented) import_blocks.insert(part);
  }
  for (const auto& op : spec.operations)
    if (op.body && op.body->find("np.") != std::string::npos) needs_numpy = true;
  for (const auto& op : spec.operations)
    if (op.body)
      for (const auto& r : diagram.blocks)
        if (!r.augmented && r.label != block.label &&
            op.body->find(pascal_case(r.label) + ".") != std::string::npos)
          import_blocks.insert(r.label);
  if (needs_numpy) imports.push_back("import numpy as np");
  for (const auto& l : import_blocks)
    imports.push_back("from " + module_of(plan, l) + " import " + pascal_case(l));

  for (const auto& i : imports) out << i << "\n";
  if (!imports.empty()) out << "\n\n";

  out << "class " << spec.name;
  if (spec.parent) out << "(" << *spec.parent << ")";
  out << ":\n";
  if (!spec.docstring.empty())
    out << "    \"\"\"\n    " << spec.docstring << "\n    \"\"\"\n\n";

  for (const auto& [name, literal] : spec.attribute_assignments)
    out << "    " << name << " = " << literal << "\n";
  if (!spec.attribute_assignments.empty()) out << "\n";

  // __init__
  out << "    def __init__(self";
  for (const auto& s : spec.states) out << ", initial_" << s << "=0";
  out << "):\n";
  bool init_body = false;
  if (spec.parent) {
    out << "        super().__init__()\n";
    init_body = true;
  }
  for (const auto& c : spec.composed_children) {
    out << "        self." << c << " = " << c << "()\n";
    init_body = true;
  }
  for (const auto& s : spec.states) {
    out << "        self." << s << " = initial_" << s << "\n";
    init_body = true;
  }
  if (!init_body) out << "        pass\n";
  out << "\n";

  for (const auto& op : spec.operations) {
    if (op.body) {
      out << indent_block(*op.body, "    ") << "\n";
    } else {
      out << "    def " << op.name << "(self):\n";
      if (!op.docstring.empty())
        out << "        \"\"\"\n        " << op.docstring << "\n        \"\"\"\n";
      out << "        pass\n\n";
    }
  }

  if (info.simulatable) {
    if (!info.matched_op.empty()) {
      out << "    def simulate(self, time_step):\n        return self." << info.matched_op
          << "(time_step";
      for (const auto& s : info.states) out << ", self." << s;
      out << ")\n";
    } else {
      out << "    def simulate(self, time_step):\n        results = {}\n";
      for (const auto& c : spec.composed_children) {
        bool child_sim = false;
        for (const auto& [s, path] : info.state_paths)
          if (path.rfind(c + ".", 0) == 0) child_sim = true;
        if (child_sim)
          out << "        results.update(self." << c << ".simulate(time_step))\n";
      }
      out << "        return results\n";
    }
  }
  return out.str();
}

std::vector<std::string> root_level_blocks(const FileTreePlan& plan) {
  std::vector<std::string> out;
  for (const auto& n : plan.root.children)
    if (n.kind == "file" && n.block_label) out.push_back(*n.block_label);
  return out;
}

}  // namespace

SourceFile generate_component_code(const bdd::Block& block, const bdd::BDD& diagram,
                                   const FileTreePlan& plan,
                                   const std::vector<EquationTemplate>& registry,
                                   const ConstantsDB& constants,
                                   semantics::Embedder& embedder, const CodegenOptions& opts,
                                   std::vector<json>* log, json* plan_components) {
  auto info = analyze_block(block, diagram, registry, constants, embedder, opts, log);
  if (plan_components && info.simulatable && info.semantics_id) {
    json params = json::object();
    for (const auto& [p, b] : info.bindings)
      params[p] = b.numeric_value ? json(*b.numeric_value) : json();
    plan_components->push_back({{"name", pascal_case(block.label)},
                                {"block", block.label},
                                {"semantics_id", *info.semantics_id},
                                {"states", info.states},
                                {"parameters", params},
                                {"template_id", info.template_id}});
  }
  auto it = plan.file_paths.find(block.label);
  std::string path = it != plan.file_paths.end() ? it->second : pascal_case(block.label) + ".py";
  return {path, emit_class(info, block, diagram, plan)};
}

SourceFile generate_system_class(const bdd::BDD& diagram, const FileTreePlan& plan,
                                 const std::vector<EquationTemplate>& registry,
                                 const ConstantsDB& constants, semantics::Embedder& embedder,
                                 const CodegenOptions& opts) {
  struct RootComp {
    std::string cls;
    ComponentInfo info;
  };
  std::vector<RootComp> comps;
  for (const auto& label : root_level_blocks(plan))
    comps.push_back(
        {pascal_case(label), analyze_label(label, diagram, registry, constants, embedder, opts)});
  auto selected = select_simulated(diagram, plan, registry, constants, embedder, opts);
  std::set<std::string> stepped;
  for (const auto& s : selected) stepped.insert(pascal_case(s.label));

  std::ostringstream out;
  for (const auto& c : comps)
    out << "from " << c.cls << " import " << c.cls << "\n";
  out << "import numpy as np\n\n\nclass System:\n\n    def __init__(self):\n";
  if (comps.empty()) out << "        pass\n";
  for (const auto& c : comps) {
    out << "        self." << c.cls << " = " << c.cls << "(";
    if (!c.info.matched_op.empty())
      for (size_t i = 0; i < c.info.states.size(); ++i) out << (i ? ", 0" : "0");
    out << ")\n";
  }

  out << "\n    def simulate(self, args):\n"
         "        \"\"\"\n"
         "        Simulate the system with the given arguments.\n"
         "        \"\"\"\n"
         "        time_step = args.get('time_step', 1)\n"
         "        total_time = args.get('total_time', 100)\n\n";

  // (component class, state, attribute path) triples, in component order.
  std::vector<std::tuple<std::string, std::string, std::string>> states;
  for (const auto& c : comps)
    if (stepped.count(c.cls))
      for (const auto& [s, path] : c.info.state_paths) states.emplace_back(c.cls, s, path);

  for (const auto& [cls, s, path] : states)
    out << "        initial_" << s << " = args.get('initial_" << s << "', 0)\n";
  for (const auto& [cls, s, path] : states)
    out << "        self." << cls << "." << path << " = initial_" << s << "\n";
  out << "\n        time = []\n";
  for (const auto& [cls, s, path] : states) out << "        " << s << " = []\n";
  out << "\n        for i in range(int(total_time / time_step)):\n"
         "            time.append(i * time_step)\n";
  for (const auto& c : comps) {
    if (!stepped.count(c.cls)) continue;
    out << "            " << c.cls << "_results = self." << c.cls << ".simulate(time_step)\n";
    for (const auto& [cls, s, path] : states)
      if (cls == c.cls)
        out << "            " << s << ".append(" << c.cls << "_results['" << s << "'])\n";
  }
  out << "\n        return {\n            'time': time,\n";
  for (const auto& [cls, s, path] : states)
    out << "            '" << s << "': " << s << ",\n";
  out << "        }\n";
  return {"System.py", out.str()};
}

GenerationResult generate_tree(const bdd::BDD& diagram,
                               const std::vector<EquationTemplate>& registry,
                               const ConstantsDB& constants, semantics::Embedder& embedder,
                               const CodegenOptions& opts) {
  GenerationResult result;
  result.plan = plan_file_tree(diagram);
  json components = json::array();
  for (const auto& b : diagram.blocks) {
    if (b.augmented) continue;
    result.files.push_back(generate_component_code(b, diagram, result.plan, registry, constants,
                                                   embedder, opts, &result.log, nullptr));
  }
  // The plan mirrors exactly what System.simulate steps, so the reference
  // evaluator and the generated code walk the same component list.
  for (const auto& s :
       select_simulated(diagram, result.plan, registry, constants, embedder, opts, &result.log)) {
    json params = json::object();
    for (const auto& [p, b] : s.info.bindings)
      params[p] = b.numeric_value ? json(*b.numeric_value) : json();
    components.push_back({{"name", pascal_case(s.label)},
                          {"block", s.label},
                          {"semantics_id", s.info.semantics_id ? json(*s.info.semantics_id) : json()},
                          {"states", s.info.states},
                          {"parameters", params},
                          {"template_id", s.info.template_id}});
  }
  result.files.push_back(
      generate_system_class(diagram, result.plan, registry, constants, embedder, opts));
  result.files.push_back(
      {"main.py",
       "import json\n"
       "import sys\n\n"
       "from System import System\n\n\n"
       "def main():\n"
       "    args = json.loads(sys.stdin.read() or \"{}\")\n"
       "    result = System().simulate(args)\n"
       "    print(json.dumps(result))\n\n\n"
       "if __name__ == \"__main__\":\n"
       "    main()\n"});
  result.system_plan = {{"components", components},
                        {"time_step_default", 1.0},
                        {"total_time_default", 100.0}};
  return result;
}

void write_tree(const GenerationResult& result, const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (const auto& f : result.files) {
    fs::path p = fs::path(out_dir) / f.path;
    fs::create_directories(p.parent_path());
    write_file(p.string(), f.content);
  }
  write_file((fs::path(out_dir) / "system_plan.json").string(), result.system_plan.dump(2) + "\n");
  std::string log;
  for (const auto& rec : result.log) log += rec.dump() + "\n";
  write_file((fs::path(out_dir) / "generation_log.jsonl").string(), log);
}

}  // namespace t2m::codegen
