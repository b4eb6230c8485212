// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

namespace t2m::semantics {

struct EmbeddingVector {
  std::vector<double> components;
  int dim() const { return (int)components.size(); }
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbeddingVector embed(const std::string& text) = 0;
  virtual std::string name() const = 0;
};

// Deterministic hashed bag-of-character-trigrams embedder (test default).
class HashedTrigramEmbedder : public Embedder {
 public:
  explicit HashedTrigramEmbedder(int dim = 256) : dim_(dim) {}
  EmbeddingVector embed(const std::string& text) override;
  std::string name() const override { return "hashed-trigram"; }

 private:
  int dim_;
};

double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Cosine of two label strings; exactly 1.0 for identical strings.
double text_similarity(Embedder& e, const std::string& a, const std::string& b);

std::unique_ptr<Embedder> make_embedder(const std::string& spec);

}  // namespace t2m::semantics
