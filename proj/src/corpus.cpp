// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/corpus.hpp"

#include <filesystem>
#include <iostream>
#include <regex>

#include "t2m/util.hpp"

namespace t2m::corpus {

namespace fs = std::filesystem;

int whitespace_token_count(const std::string& text) {
  return static_cast<int>(split_ws(text).size());
}

static std::string normalize_text(const std::string& raw) {
  // UTF-8 passthrough; strip control characters other than \n and \t.
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    if (c == '\r') continue;
    if (c < 0x20 && c != '\n' && c != '\t') continue;
    out.push_back(char(c));
  }
  return out;
}

static std::string stem_name(const std::string& path) {
  return fs::path(path).stem().string();
}

Corpus load_corpus(const std::vector<std::string>& paths,
                   const std::optional<std::string>& split_heading_regex,
                   const std::string& name) {
  Corpus c;
  c.name = name;
  for (const auto& path : paths) {
    std::string text;
    try {
      text = normalize_text(read_file(path));
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("ingestion error: ") + e.what());
    }
    if (split_ws(text).empty()) {
      std::cerr << "warning: skipping empty file " << path << "\n";
      continue;
    }
    std::vector<std::pair<std::string, std::string>> sections;  // title, body
    if (split_heading_regex) {
      std::regex heading(*split_heading_regex);
      std::istringstream in(text);
      std::string line, title = stem_name(path), body;
      bool any = false;
      while (std::getline(in, line)) {
        if (std::regex_match(line, heading)) {
          if (!split_ws(body).empty()) sections.emplace_back(title, body);
          title = line;
          body = line + "\n";  // keep heading tokens so section concat is lossless
          any = true;
        } else {
          body += line;
          body += '\n';
        }
      }
      if (!split_ws(body).empty()) sections.emplace_back(title, body);
      if (!any) sections = {{stem_name(path), text}};
    } else {
      sections = {{stem_name(path), text}};
    }
    int part = 0;
    for (auto& [title, body] : sections) {
      Document d;
      d.id = stem_name(path);
      if (sections.size() > 1) d.id += "#" + std::to_string(part++);
      d.title = title;
      d.raw_text = body;
      d.source_path = path;
      d.word_count = whitespace_token_count(body);
      c.documents.push_back(std::move(d));
    }
  }
  if (c.documents.empty()) throw std::runtime_error("ingestion error: corpus is empty");
  return c;
}

CorpusStats corpus_stats(const Corpus& c) {
  CorpusStats s;
  s.document_count = static_cast<int>(c.documents.size());
  double total = 0;
  for (const auto& d : c.documents) total += d.word_count;
  s.mean_word_count = s.document_count ? total / s.document_count : 0.0;
  s.meets_guideline = s.document_count > 100 && s.mean_word_count > 500;
  return s;
}

void save_manifest(const Corpus& c, const std::string& path) {
  json j = json::array();
  for (const auto& d : c.documents) {
    j.push_back({{"id", d.id},
                 {"title", d.title},
                 {"path", d.source_path},
                 {"word_count", d.word_count},
                 {"text", d.raw_text}});
  }
  write_file(path, j.dump(2) + "\n");
}

Corpus load_manifest(const std::string& path) {
  json j = json::parse(read_file(path));
  Corpus c;
  c.name = fs::path(path).stem().string();
  for (const auto& e : j) {
    Document d;
    d.id = e.at("id").get<std::string>();
    d.title = e.at("title").get<std::string>();
    d.source_path = e.at("path").get<std::string>();
    d.word_count = e.at("word_count").get<int>();
    if (e.contains("text"))
      d.raw_text = e.at("text").get<std::string>();
    else
      d.raw_text = read_file(d.source_path);
    c.documents.push_back(std::move(d));
  }
  return c;
}

}  // namespace t2m::corpus
