#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "t2m/embed.hpp"
#include "t2m/semantics.hpp"

using namespace t2m;

TEST_CASE("lexical database roots and depths are consistent") {
  const auto& db = semantics::LexDB::instance();
  auto entity = db.first_noun_synset("entity");
  REQUIRE(entity.has_value());
  CHECK(db.depth(*entity) == 0);
  CHECK(db.ancestors(*entity).size() == 1);  // the root's chain is just itself

  // depth(s) is exactly the hypernym-chain length, for every noun we rely on.
  for (const auto* w : {"pendulum", "bob", "period", "gravity", "motion", "mass", "string",
                        "kilogram", "meter", "object", "abstraction"}) {
    auto s = db.first_noun_synset(w);
    REQUIRE_MESSAGE(s.has_value(), w);
    auto chain = db.ancestors(*s);
    CHECK(db.depth(*s) == (int)chain.size() - 1);
    // Walking the chain must strictly reduce depth by one per hop.
    for (size_t i = 0; i + 1 < chain.size(); ++i)
      CHECK(db.depth(chain[i]) == db.depth(chain[i + 1]) + 1);
    // Every chain terminates at the root.
    CHECK(chain.back() == *entity);
  }
}

TEST_CASE("selected noun depths") {
  const auto& db = semantics::LexDB::instance();
  auto depth_of = [&](const std::string& w) { return db.depth(*db.first_noun_synset(w)); };
  CHECK(depth_of("entity") == 0);
  CHECK(depth_of("abstraction") == 1);
  CHECK(depth_of("object") == 2);
  CHECK(depth_of("period") == 4);
  CHECK(depth_of("mass") == 5);
  CHECK(depth_of("pendulum") == 8);
  // A deep, concrete noun always sits below the generic ones.
  CHECK(depth_of("pendulum") > depth_of("object"));
  CHECK(depth_of("bob") > depth_of("abstraction"));
}

TEST_CASE("depth scores complement normalized depth over the document vocabulary") {
  std::set<std::string> vocab = {"pendulum", "period", "entity"};
  auto scores = semantics::depth_scores(vocab, vocab);
  REQUIRE(scores.count("pendulum"));
  REQUIRE(scores.count("period"));
  // max depth in this vocabulary is pendulum's (8); h = depth / max, h' = 1 - h.
  CHECK(scores.at("pendulum").h == doctest::Approx(1.0));
  CHECK(scores.at("pendulum").h_complement == doctest::Approx(0.0));
  CHECK(scores.at("period").h == doctest::Approx(4.0 / 8.0));
  CHECK(scores.at("period").h_complement == doctest::Approx(1.0 - 4.0 / 8.0));
  CHECK(scores.at("entity").h_complement == doctest::Approx(1.0));

  // The general word scores closer to 1 than the specific one.
  CHECK(scores.at("period").h_complement > scores.at("pendulum").h_complement);
}

TEST_CASE("composite relation detection is driven by the inclusion verb family") {
  CHECK(semantics::is_composite_relation("is made up of"));
  CHECK(semantics::is_composite_relation("is made up"));
  CHECK(semantics::is_composite_relation("includes"));
  CHECK(semantics::is_composite_relation("consists of"));
  CHECK(semantics::is_composite_relation("contains"));
  CHECK(semantics::is_composite_relation("comprises"));
  CHECK_FALSE(semantics::is_composite_relation("causes"));
  CHECK_FALSE(semantics::is_composite_relation("weighs"));
  CHECK_FALSE(semantics::is_composite_relation("has"));
  CHECK_FALSE(semantics::is_composite_relation(""));
}

TEST_CASE("lowest common hypernym generalizes a word set") {
  auto artifact = semantics::lowest_common_hypernym({"bob", "pendulum"});
  REQUIRE(artifact.has_value());
  CHECK(*artifact == "artifact");

  auto entity = semantics::lowest_common_hypernym({"gravity", "motion"});
  REQUIRE(entity.has_value());
  CHECK(*entity == "entity");

  // A singleton set is its own lowest common ancestor.
  auto up = semantics::lowest_common_hypernym({"pendulum"});
  REQUIRE(up.has_value());
  CHECK(*up == "pendulum");
}

TEST_CASE("hashed trigram embedder basic geometry") {
  semantics::HashedTrigramEmbedder e(256);
  auto a = e.embed("pendulum");
  CHECK(a.dim() == 256);
  CHECK(semantics::text_similarity(e, "pendulum", "pendulum") == doctest::Approx(1.0));
  CHECK(semantics::text_similarity(e, "pendulum", "pendulum") ==
        semantics::text_similarity(e, "pendulum", "pendulum"));  // deterministic
  double near = semantics::text_similarity(e, "rudder beam", "rudder beams");
  double far = semantics::text_similarity(e, "rudder beam", "gravity");
  CHECK(near > far);
  CHECK(far < 0.7);

  // Cosine is symmetric and bounded.
  auto b = e.embed("gravity");
  CHECK(semantics::cosine(a, b) == doctest::Approx(semantics::cosine(b, a)));
  CHECK(semantics::cosine(a, b) <= 1.0);
  CHECK(semantics::cosine(a, a) == doctest::Approx(1.0));
}

TEST_CASE("make_embedder parses the spec string") {
  auto e = semantics::make_embedder("hashed-trigram:64");
  REQUIRE(e);
  CHECK(e->embed("x").dim() == 64);
  auto d = semantics::make_embedder("hashed-trigram");
  REQUIRE(d);
  CHECK(d->name() == "hashed-trigram");
}
