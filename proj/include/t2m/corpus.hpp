// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace t2m::corpus {

struct Document {
  std::string id;
  std::string title;
  std::string raw_text;
  std::string source_path;
  int word_count = 0;
};

struct Corpus {
  std::vector<Document> documents;
  std::string name;
};

struct CorpusStats {
  int document_count = 0;
  double mean_word_count = 0.0;
  bool meets_guideline = false;
};

// One Document per file, or per heading-delimited section when a split
// regex is given. Unreadable paths throw; empty files are skipped with a
// warning on stderr.
Corpus load_corpus(const std::vector<std::string>& paths,
                   const std::optional<std::string>& split_heading_regex = std::nullopt,
                   const std::string& name = "corpus");

CorpusStats corpus_stats(const Corpus& c);

int whitespace_token_count(const std::string& text);

void save_manifest(const Corpus& c, const std::string& path);
Corpus load_manifest(const std::string& path);

}  // namespace t2m::corpus
