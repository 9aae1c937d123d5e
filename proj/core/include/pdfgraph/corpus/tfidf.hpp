#pragma once

#include <vector>

#include "pdfgraph/corpus/vocab.hpp"

namespace pdfgraph::corpus {

// Per-position weights for one sentence, normalized to sum to 1.
// tf = count/|sentence|, idf = ln((1+N)/(1+df)) + 1 with N = training
// sentence count. An empty sentence yields an empty vector.
std::vector<double> tfidf_weights(const std::vector<TokenId>& sentence_ids, const Vocab& vocab);

}  // namespace pdfgraph::corpus
