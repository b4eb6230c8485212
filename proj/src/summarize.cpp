// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "t2m/textprep.hpp"
#include "t2m/util.hpp"

namespace t2m::summarize {

namespace {

std::vector<std::string> words_of(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& t : textprep::tokenize_words(s)) {
    std::string w = to_lower(t);
    if (!w.empty() && (std::isalnum((unsigned char)w[0]))) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

double sentence_similarity(const std::string& s1, const std::string& s2) {
  auto w1 = words_of(s1);
  auto w2 = words_of(s2);
  if (w1.empty() || w2.empty()) return 0.0;
  double denom = std::log(double(w1.size())) + std::log(double(w2.size()));
  if (denom <= 0.0) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& w : w2) ++counts[w];
  int shared = 0;
  for (const auto& w : w1) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      ++shared;
      --it->second;
    }
  }
  return double(shared) / denom;
}

std::vector<std::string> rank_sentences(const std::vector<std::string>& sentences,
                                        int max_sentences) {
  if (sentences.empty()) throw std::invalid_argument("rank_sentences: no sentences");
  std::vector<std::string> unique;
  for (const auto& s : sentences)
    if (std::find(unique.begin(), unique.end(), s) == unique.end()) unique.push_back(s);
  const int n = (int)unique.size();
  if (max_sentences <= 0) return {};
  if (n <= max_sentences) return unique;

  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  std::vector<double> out_weight(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      sim[i][j] = sentence_similarity(unique[i], unique[j]);
      out_weight[i] += sim[i][j];
    }

  const double d = 0.85;
  const double tol = 1e-4;
  std::vector<double> score(n, 1.0), next(n, 0.0);
  for (int iter = 0; iter < 1000; ++iter) {
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i || out_weight[j] == 0.0) continue;
        acc += sim[j][i] / out_weight[j] * score[j];
      }
      next[i] = (1.0 - d) + d * acc;
      delta = std::max(delta, std::abs(next[i] - score[i]));
    }
    score.swap(next);
    if (delta < tol) break;
  }

  // Top max_sentences by score, ties broken by original position.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score[a] > score[b]; });
  order.resize(max_sentences);
  std::sort(order.begin(), order.end());
  std::vector<std::string> out;
  for (int i : order) out.push_back(unique[i]);
  return out;
}

std::string summarize(const std::vector<std::string>& sentences, int max_sentences) {
  return join(rank_sentences(sentences, max_sentences), " ");
}

}  // namespace t2m::summarize
