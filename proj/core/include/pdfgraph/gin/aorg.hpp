#pragma once

#include <optional>

#include "pdfgraph/corpus/vocab.hpp"
#include "pdfgraph/embed/embedder.hpp"
#include "pdfgraph/graph/org.hpp"

namespace pdfgraph::gin {

// Attributed ORG: one embedding row per node, in node order.
struct Aorg {
  graph::Org org;
  nn::Matrix features;       // |nodes| x dim
  std::optional<int> label;  // 0 = benign, 1 = malicious

  // Dense edge-weight matrix (1.0 per edge); symmetrized mode mirrors each
  // directed edge, matching undirected GIN neighborhoods.
  nn::Matrix adjacency(bool symmetrize) const;
};

// features[i] = embedder(sentence of node i); empty nodes get zero rows.
Aorg build_aorg(const graph::Org& org, const embed::ObjectEmbedder& embedder,
                const corpus::Vocab& vocab, std::optional<int> label = std::nullopt);

}  // namespace pdfgraph::gin
