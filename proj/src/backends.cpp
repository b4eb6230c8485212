// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/backends.hpp"

#include <iostream>
#include <regex>
#include <stdexcept>

#include <httplib.h>

#include "t2m/embed.hpp"
#include "t2m/util.hpp"

namespace t2m::backends {

namespace {

bool is_http(const std::string& spec) {
  return spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0;
}

struct Endpoint {
  std::string base;  // scheme://host:port
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  static const std::regex re(R"((https?://[^/]+)(/.*)?)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw std::invalid_argument("bad endpoint URL: " + url);
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

json post_json(const Endpoint& ep, const json& body) {
  httplib::Client client(ep.base);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  auto res = client.Post(ep.path, body.dump(), "application/json");
  if (!res) throw std::runtime_error("backend unreachable: " + ep.base + ep.path);
  if (res->status != 200)
    throw std::runtime_error("backend error " + std::to_string(res->status) + " from " +
                             ep.base + ep.path);
  return json::parse(res->body);
}

class HttpRelationExtractor : public kgraph::RelationExtractor {
 public:
  explicit HttpRelationExtractor(const std::string& url) : ep_(split_endpoint(url)) {}

  std::vector<kgraph::RelationTriple> extract(const std::string& sentence,
                                              const kgraph::SentenceRef& ref) override {
    json resp = post_json(ep_, {{"sentence", sentence},
                                {"doc_id", ref.doc_id},
                                {"sentence_index", ref.sentence_index}});
    std::vector<kgraph::RelationTriple> out;
    for (const auto& t : resp.value("triples", json::array())) {
      kgraph::RelationTriple triple;
      triple.subject = t.value("subject", "");
      triple.relation = t.value("relation", "");
      triple.object = t.value("object", "");
      triple.confidence = t.value("confidence", 1.0);
      triple.sentence_ref = ref;
      if (!triple.subject.empty()) out.push_back(std::move(triple));
    }
    return out;
  }

 private:
  Endpoint ep_;
};

class HttpAttributeExtractor : public bdd::AttributeExtractor {
 public:
  HttpAttributeExtractor(const std::string& url, const std::string& prompt_template)
      : ep_(split_endpoint(url)), template_(prompt_template) {}

  std::vector<bdd::Attribute> extract(const std::string& block_label,
                                      const std::string& context) override {
    std::string prompt = template_;
    size_t pos;
    while ((pos = prompt.find("{input}")) != std::string::npos)
      prompt.replace(pos, 7, context);
    json resp;
    try {
      resp = post_json(ep_, {{"prompt", prompt}, {"block", block_label}, {"context", context}});
    } catch (const json::exception& e) {
      // Malformed JSON from the model: logged, skipped.
      std::cerr << "warning: attribute backend returned malformed JSON for block '"
                << block_label << "': " << e.what() << "\n";
      return {};
    }
    std::vector<bdd::Attribute> out;
    for (const auto& a : resp.value("attributes", json::array())) {
      bdd::Attribute attr;
      attr.label = a.value("label", "");
      attr.value = a.value("value", "");
      attr.unit = a.value("unit", "");
      char* end = nullptr;
      std::strtod(attr.value.c_str(), &end);
      attr.kind = (!attr.value.empty() && end && *end == '\0') ? "numeric" : "descriptive";
      if (!attr.label.empty()) out.push_back(std::move(attr));
    }
    return out;
  }

 private:
  Endpoint ep_;
  std::string template_;
};

class HttpCoreferenceResolver : public textprep::CoreferenceResolver {
 public:
  explicit HttpCoreferenceResolver(const std::string& url) : ep_(split_endpoint(url)) {}

  std::optional<std::string> resolve(const std::string& text) override {
    try {
      json resp = post_json(ep_, {{"text", text}});
      if (resp.contains("text")) return resp["text"].get<std::string>();
    } catch (const std::exception&) {
    }
    return std::nullopt;
  }

 private:
  Endpoint ep_;
};

class HttpEmbedder : public semantics::Embedder {
 public:
  explicit HttpEmbedder(const std::string& url) : ep_(split_endpoint(url)), url_(url) {}

  semantics::EmbeddingVector embed(const std::string& text) override {
    json resp = post_json(ep_, {{"text", text}});
    semantics::EmbeddingVector v;
    v.components = resp.at("embedding").get<std::vector<double>>();
    return v;
  }

  std::string name() const override { return "http:" + url_; }

 private:
  Endpoint ep_;
  std::string url_;
};

}  // namespace

std::unique_ptr<kgraph::RelationExtractor> make_relation_extractor(const std::string& spec) {
  if (spec == "pattern" || spec.empty())
    return std::make_unique<kgraph::PatternRelationExtractor>();
  if (is_http(spec)) return std::make_unique<HttpRelationExtractor>(spec);
  throw std::invalid_argument("unknown relation extractor backend: " + spec);
}

std::unique_ptr<bdd::AttributeExtractor> make_attribute_extractor(
    const std::string& spec, const std::string& prompt_template_path) {
  if (spec == "pattern" || spec.empty())
    return std::make_unique<bdd::PatternAttributeExtractor>();
  if (is_http(spec)) {
    std::string tmpl =
        prompt_template_path.empty() ? "{input}" : read_file(prompt_template_path);
    return std::make_unique<HttpAttributeExtractor>(spec, tmpl);
  }
  throw std::invalid_argument("unknown attribute extractor backend: " + spec);
}

std::unique_ptr<textprep::CoreferenceResolver> make_coref_resolver(const std::string& spec) {
  if (spec == "rule" || spec.empty())
    return std::make_unique<textprep::RuleCoreferenceResolver>();
  if (is_http(spec)) return std::make_unique<HttpCoreferenceResolver>(spec);
  throw std::invalid_argument("unknown coreference backend: " + spec);
}

std::unique_ptr<semantics::Embedder> make_http_embedder(const std::string& url) {
  return std::make_unique<HttpEmbedder>(url);
}

}  // namespace t2m::backends

namespace t2m::semantics {

std::unique_ptr<Embedder> make_embedder(const std::string& spec) {
  if (spec.empty() || spec == "hashed-trigram") return std::make_unique<HashedTrigramEmbedder>();
  if (spec.rfind("hashed-trigram:", 0) == 0) {
    int dim = std::atoi(spec.substr(15).c_str());
    if (dim <= 0) throw std::invalid_argument("bad embedder dimension in: " + spec);
    return std::make_unique<HashedTrigramEmbedder>(dim);
  }
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0)
    return t2m::backends::make_http_embedder(spec);
  throw std::invalid_argument("unknown embedder backend: " + spec);
}

}  // namespace t2m::semantics
