#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "t2m/corpus.hpp"
#include "t2m/util.hpp"

namespace fs = std::filesystem;
using namespace t2m;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("t2m_corpus_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) {
    auto p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

}  // namespace

TEST_CASE("whitespace token count") {
  CHECK(corpus::whitespace_token_count("") == 0);
  CHECK(corpus::whitespace_token_count("one") == 1);
  CHECK(corpus::whitespace_token_count("  a\tb\nc  ") == 3);
}

TEST_CASE("load_corpus reads one document per file") {
  TempDir t;
  auto p1 = t.file("alpha.txt", "A pendulum swings back and forth.");
  auto p2 = t.file("beta.txt", "Gravity pulls the bob downward.");
  auto c = corpus::load_corpus({p1, p2}, std::nullopt, "demo");
  CHECK(c.name == "demo");
  REQUIRE(c.documents.size() == 2);
  CHECK(c.documents[0].id == "alpha");
  CHECK(c.documents[0].word_count == 6);
  CHECK(c.documents[1].id == "beta");
  CHECK(c.documents[1].source_path == p2);
}

TEST_CASE("load_corpus skips empty files but rejects an empty corpus") {
  TempDir t;
  auto empty = t.file("empty.txt", "   \n\t  ");
  auto full = t.file("full.txt", "some words here");
  auto c = corpus::load_corpus({empty, full});
  CHECK(c.documents.size() == 1);
  CHECK(c.documents[0].id == "full");
  CHECK_THROWS_AS(corpus::load_corpus({empty}), std::runtime_error);
  CHECK_THROWS_AS(corpus::load_corpus({t.path.string() + "/missing.txt"}), std::runtime_error);
}

TEST_CASE("heading split is lossless over tokens") {
  TempDir t;
  std::string body =
      "Preface text before any chapter.\n"
      "CHAPTER I\n"
      "The first chapter talks about gliders.\n"
      "CHAPTER II\n"
      "The second chapter talks about rudders and wires.\n";
  auto p = t.file("book.txt", body);
  auto c = corpus::load_corpus({p}, std::string("^CHAPTER .*$"));
  REQUIRE(c.documents.size() == 3);
  CHECK(c.documents[0].id == "book#0");
  CHECK(c.documents[1].title == "CHAPTER I");
  CHECK(c.documents[2].title == "CHAPTER II");
  // Concatenating the sections must reproduce the original token stream.
  std::vector<std::string> all;
  for (const auto& d : c.documents)
    for (const auto& w : split_ws(d.raw_text)) all.push_back(w);
  CHECK(all == split_ws(body));
}

TEST_CASE("no heading match keeps the file whole") {
  TempDir t;
  auto p = t.file("plain.txt", "no headings in this file at all");
  auto c = corpus::load_corpus({p}, std::string("^CHAPTER .*$"));
  REQUIRE(c.documents.size() == 1);
  CHECK(c.documents[0].id == "plain");
}

TEST_CASE("corpus_stats guideline thresholds") {
  corpus::Corpus small;
  small.documents.resize(10);
  for (auto& d : small.documents) d.word_count = 1000;
  auto s = corpus::corpus_stats(small);
  CHECK(s.document_count == 10);
  CHECK(s.mean_word_count == doctest::Approx(1000.0));
  CHECK_FALSE(s.meets_guideline);  // needs more than 100 documents

  corpus::Corpus big;
  big.documents.resize(101);
  for (auto& d : big.documents) d.word_count = 501;
  CHECK(corpus::corpus_stats(big).meets_guideline);

  big.documents[0].word_count = 0;  // drags the mean to 496.04
  CHECK_FALSE(corpus::corpus_stats(big).meets_guideline);
}

TEST_CASE("manifest round trip preserves every document field") {
  TempDir t;
  auto p1 = t.file("one.txt", "first document body with words");
  auto p2 = t.file("two.txt", "second document body");
  auto c = corpus::load_corpus({p1, p2});
  auto mpath = (t.path / "manifest.json").string();
  corpus::save_manifest(c, mpath);
  auto back = corpus::load_manifest(mpath);
  REQUIRE(back.documents.size() == c.documents.size());
  for (size_t i = 0; i < c.documents.size(); ++i) {
    CHECK(back.documents[i].id == c.documents[i].id);
    CHECK(back.documents[i].title == c.documents[i].title);
    CHECK(back.documents[i].raw_text == c.documents[i].raw_text);
    CHECK(back.documents[i].source_path == c.documents[i].source_path);
    CHECK(back.documents[i].word_count == c.documents[i].word_count);
  }
}

TEST_CASE("carriage returns are normalized away") {
  TempDir t;
  auto p = t.file("crlf.txt", "line one\r\nline two\r\n");
  auto c = corpus::load_corpus({p});
  CHECK(c.documents[0].raw_text.find('\r') == std::string::npos);
  CHECK(c.documents[0].word_count == 4);
}
