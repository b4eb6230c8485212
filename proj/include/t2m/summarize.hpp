// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace t2m::summarize {

// Word-overlap sentence similarity: |shared words (with multiplicity)| /
// (log|S1| + log|S2|). Zero when either sentence has a single token.
double sentence_similarity(const std::string& s1, const std::string& s2);

// Extractive TextRank: damping 0.85, tolerance 1e-4; returns up to
// max_sentences of the (deduplicated) input, in original order.
std::vector<std::string> rank_sentences(const std::vector<std::string>& sentences,
                                        int max_sentences);

std::string summarize(const std::vector<std::string>& sentences, int max_sentences);

}  // namespace t2m::summarize
