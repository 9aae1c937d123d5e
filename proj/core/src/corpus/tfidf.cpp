#include "pdfgraph/corpus/tfidf.hpp"

#include <cmath>
#include <unordered_map>

namespace pdfgraph::corpus {

std::vector<double> tfidf_weights(const std::vector<TokenId>& sentence_ids, const Vocab& vocab) {
  std::vector<double> weights(sentence_ids.size(), 0.0);
  if (sentence_ids.empty()) return weights;

  std::unordered_map<TokenId, std::size_t> counts;
  for (TokenId id : sentence_ids) ++counts[id];

  const double n_sentences = static_cast<double>(vocab.sentence_count());
  const double len = static_cast<double>(sentence_ids.size());
  double total = 0.0;
  for (std::size_t i = 0; i < sentence_ids.size(); ++i) {
    const TokenId id = sentence_ids[i];
    const double tf = static_cast<double>(counts[id]) / len;
    const double df = static_cast<double>(vocab.doc_frequency(id));
    const double idf = std::log((1.0 + n_sentences) / (1.0 + df)) + 1.0;
    weights[i] = tf * idf;
    total += weights[i];
  }
  if (total > 0.0) {
    for (double& w : weights) w /= total;
  } else {
    for (double& w : weights) w = 1.0 / len;
  }
  return weights;
}

}  // namespace pdfgraph::corpus
