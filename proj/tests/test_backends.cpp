#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "t2m/backends.hpp"
#include "t2m/embed.hpp"
#include "t2m/util.hpp"

using namespace t2m;

namespace {

// Tiny in-process HTTP stub: one handler, records the last request body.
struct StubServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::string last_body;

  explicit StubServer(const std::string& path,
                      std::function<std::string(const json&)> handler,
                      int status = 200) {
    server.Post(path, [this, handler, status](const httplib::Request& req,
                                              httplib::Response& res) {
      last_body = req.body;
      res.status = status;
      res.set_content(handler(json::parse(req.body, nullptr, false)),
                      "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~StubServer() {
    server.stop();
    thread.join();
  }

  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port) + path;
  }
};

}  // namespace

TEST_CASE("factories return the built-in backends for their canonical specs") {
  auto rel = backends::make_relation_extractor("pattern");
  REQUIRE(rel != nullptr);
  auto triples = rel->extract("A pendulum is made up of a bob.", {"d1", 0});
  REQUIRE(!triples.empty());
  CHECK(triples[0].relation == "is made up");

  auto attr = backends::make_attribute_extractor("pattern");
  REQUIRE(attr != nullptr);
  auto attrs = attr->extract("bob", "The bob weighs 2 kilograms.");
  REQUIRE(!attrs.empty());
  CHECK(attrs[0].label == "weight");

  auto coref = backends::make_coref_resolver("rule");
  REQUIRE(coref != nullptr);
  auto resolved =
      coref->resolve("A pendulum is made up of a bob. Its period depends on gravity.");
  REQUIRE(resolved.has_value());
  CHECK(resolved->find("Its") == std::string::npos);
}

TEST_CASE("factories reject unknown specs") {
  CHECK_THROWS_AS(backends::make_relation_extractor("gpt-17"), std::invalid_argument);
  CHECK_THROWS_AS(backends::make_attribute_extractor("gpt-17"), std::invalid_argument);
  CHECK_THROWS_AS(backends::make_coref_resolver("gpt-17"), std::invalid_argument);
  CHECK_THROWS_AS(semantics::make_embedder("word2vec"), std::invalid_argument);
}

TEST_CASE("http relation extractor: request protocol and response parsing") {
  StubServer stub("/relations", [](const json&) {
    return json{{"triples",
                 {{{"subject", "pendulum"},
                   {"relation", "is made up"},
                   {"object", "bob"},
                   {"confidence", 0.9}},
                  {{"subject", "gravity"}, {"relation", "causes"}, {"object", "motion"}},
                  // No subject: must be dropped.
                  {{"relation", "has"}, {"object", "string"}}}}}
        .dump();
  });

  auto rel = backends::make_relation_extractor(stub.url("/relations"));
  kgraph::SentenceRef ref{"doc7", 3};
  auto triples = rel->extract("A pendulum is made up of a bob.", ref);

  json sent = json::parse(stub.last_body);
  CHECK(sent.at("sentence") == "A pendulum is made up of a bob.");
  CHECK(sent.at("doc_id") == "doc7");
  CHECK(sent.at("sentence_index") == 3);

  REQUIRE(triples.size() == 2);
  CHECK(triples[0].subject == "pendulum");
  CHECK(triples[0].object == "bob");
  CHECK(triples[0].confidence == doctest::Approx(0.9));
  CHECK(triples[0].sentence_ref.doc_id == "doc7");
  CHECK(triples[0].sentence_ref.sentence_index == 3);
  CHECK(triples[1].confidence == doctest::Approx(1.0));  // default when omitted
}

TEST_CASE("http attribute extractor: prompt templating and kind inference") {
  StubServer stub("/attributes", [](const json&) {
    return json{{"attributes",
                 {{{"label", "weight"}, {"value", "2"}, {"unit", "kilogram"}},
                  {{"label", "condition"}, {"value", "small angles"}},
                  // No label: must be dropped.
                  {{"value", "3"}, {"unit", "m"}}}}}
        .dump();
  });

  StubServer* s = &stub;
  std::string tmpl_path =
      (std::filesystem::temp_directory_path() / "t2m_prompt.txt").string();
  write_file(tmpl_path, "Extract attributes from: {input}\nText again: {input}");

  auto attr = backends::make_attribute_extractor(s->url("/attributes"), tmpl_path);
  auto attrs = attr->extract("bob", "The bob weighs 2 kilograms.");

  json sent = json::parse(s->last_body);
  CHECK(sent.at("block") == "bob");
  CHECK(sent.at("context") == "The bob weighs 2 kilograms.");
  // Every {input} placeholder is replaced with the context sentence.
  CHECK(sent.at("prompt") ==
        "Extract attributes from: The bob weighs 2 kilograms.\n"
        "Text again: The bob weighs 2 kilograms.");

  REQUIRE(attrs.size() == 2);
  CHECK(attrs[0].label == "weight");
  CHECK(attrs[0].value == "2");
  CHECK(attrs[0].unit == "kilogram");
  CHECK(attrs[0].kind == "numeric");
  CHECK(attrs[1].kind == "descriptive");
  std::filesystem::remove(tmpl_path);
}

TEST_CASE("http attribute extractor: malformed model output is skipped, not fatal") {
  StubServer stub("/attributes", [](const json&) { return "this is not json {"; });
  auto attr = backends::make_attribute_extractor(stub.url("/attributes"));
  auto attrs = attr->extract("bob", "The bob weighs 2 kilograms.");
  CHECK(attrs.empty());
}

TEST_CASE("http relation extractor: server errors surface as exceptions") {
  StubServer stub("/relations", [](const json&) { return std::string("oops"); },
                  /*status=*/500);
  auto rel = backends::make_relation_extractor(stub.url("/relations"));
  CHECK_THROWS_AS(rel->extract("text", {"d1", 0}), std::runtime_error);

  // Nothing listening at all: also an exception, not a hang or crash.
  auto dead = backends::make_relation_extractor("http://127.0.0.1:1/relations");
  CHECK_THROWS_AS(dead->extract("text", {"d1", 0}), std::runtime_error);
}

TEST_CASE("http coreference resolver: resolved text or graceful nullopt") {
  StubServer stub("/coref", [](const json& req) {
    std::string text = req.value("text", "");
    return json{{"text", "RESOLVED: " + text}}.dump();
  });
  auto coref = backends::make_coref_resolver(stub.url("/coref"));
  auto out = coref->resolve("Its period depends on gravity.");
  REQUIRE(out.has_value());
  CHECK(*out == "RESOLVED: Its period depends on gravity.");
  CHECK(json::parse(stub.last_body).at("text") == "Its period depends on gravity.");

  // A failing endpoint degrades to "no resolution" instead of throwing.
  auto dead = backends::make_coref_resolver("http://127.0.0.1:1/coref");
  CHECK_FALSE(dead->resolve("anything").has_value());
}

TEST_CASE("http embedder: vector transport and naming") {
  StubServer stub("/embed", [](const json&) {
    return json{{"embedding", {0.6, 0.8, 0.0}}}.dump();
  });
  auto embedder = semantics::make_embedder(stub.url("/embed"));
  CHECK(embedder->name() == "http:" + stub.url("/embed"));
  auto v = embedder->embed("pendulum");
  REQUIRE(v.components.size() == 3);
  CHECK(v.components[0] == doctest::Approx(0.6));
  CHECK(v.components[1] == doctest::Approx(0.8));
  CHECK(json::parse(stub.last_body).at("text") == "pendulum");
}
