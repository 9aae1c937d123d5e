#include "pdfgraph/gin/metrics.hpp"

#include <stdexcept>

namespace pdfgraph::gin {

Metrics compute_metrics(const std::vector<int>& truth, const std::vector<int>& predicted) {
  if (truth.empty() || truth.size() != predicted.size())
    throw std::invalid_argument("metrics need a non-empty aligned label set");
  Metrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 1) {
      (predicted[i] == 1 ? m.tp : m.fn) += 1;
    } else {
      (predicted[i] == 0 ? m.tn : m.fp) += 1;
    }
  }
  const std::size_t total = m.tp + m.fn + m.tn + m.fp;
  m.acc = static_cast<double>(m.tp + m.tn) / static_cast<double>(total);
  if (m.tp + m.fn > 0) m.tpr = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  if (m.tn + m.fp > 0) {
    m.tnr = static_cast<double>(m.tn) / static_cast<double>(m.tn + m.fp);
    m.fpr = static_cast<double>(m.fp) / static_cast<double>(m.tn + m.fp);
  }
  return m;
}

std::string Metrics::summary() const {
  auto fmt = [](const std::optional<double>& v) {
    return v ? std::to_string(*v) : std::string("undefined");
  };
  return "acc=" + fmt(acc) + " tpr=" + fmt(tpr) + " tnr=" + fmt(tnr) + " fpr=" + fmt(fpr);
}

}  // namespace pdfgraph::gin
