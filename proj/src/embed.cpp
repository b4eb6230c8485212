// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#include "t2m/embed.hpp"

#include <cmath>
#include <stdexcept>

#include "t2m/util.hpp"

namespace t2m::semantics {

EmbeddingVector HashedTrigramEmbedder::embed(const std::string& text) {
  EmbeddingVector v;
  v.components.assign(dim_, 0.0);
  std::string s = "^" + to_lower(text) + "$";
  size_t n = s.size();
  size_t gram = n < 3 ? n : 3;
  for (size_t i = 0; i + gram <= n; ++i) {
    uint64_t h = fnv1a64(s.substr(i, gram));
    v.components[h % dim_] += 1.0;
  }
  return v;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("cosine: dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (int i = 0; i < a.dim(); ++i) {
    dot += a.components[i] * b.components[i];
    na += a.components[i] * a.components[i];
    nb += b.components[i] * b.components[i];
  }
  if (na == 0 || nb == 0) throw std::invalid_argument("cosine: zero vector");
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return c;
}

double text_similarity(Embedder& e, const std::string& a, const std::string& b) {
  if (a == b) return 1.0;
  return cosine(e.embed(a), e.embed(b));
}

std::unique_ptr<Embedder> make_embedder(const std::string& spec);  // defined in backends.cpp

}  // namespace t2m::semantics
