#include "pdfgraph/gin/aorg.hpp"

namespace pdfgraph::gin {

nn::Matrix Aorg::adjacency(bool symmetrize) const {
  const Eigen::Index n = static_cast<Eigen::Index>(org.nodes.size());
  nn::Matrix A = nn::Matrix::Zero(n, n);
  for (const auto& [a, b] : org.edges) {
    const std::size_t i = org.node_index(a);
    const std::size_t j = org.node_index(b);
    if (i >= org.nodes.size() || j >= org.nodes.size()) continue;
    A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    if (symmetrize) A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return A;
}

Aorg build_aorg(const graph::Org& org, const embed::ObjectEmbedder& embedder,
                const corpus::Vocab& vocab, std::optional<int> label) {
  Aorg aorg;
  aorg.org = org;
  aorg.label = label;
  aorg.features = nn::Matrix::Zero(static_cast<Eigen::Index>(org.nodes.size()), embedder.dim());
  for (std::size_t i = 0; i < org.nodes.size(); ++i) {
    const auto& entries = org.nodes[i].second;
    if (entries.empty()) continue;  // synthesized nodes keep the zero row
    corpus::Sentence s;
    s.object = org.nodes[i].first;
    for (const auto& e : entries) s.tokens.push_back(corpus::tokenize(e));
    aorg.features.row(static_cast<Eigen::Index>(i)) = embedder.embed(vocab.encode(s)).transpose();
  }
  return aorg;
}

}  // namespace pdfgraph::gin
