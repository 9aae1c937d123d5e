#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pdfgraph::gin {

// Confusion-matrix rates with malicious (1) as the positive class.
// Undefined rates (empty class) stay unset rather than reading as 0.
struct Metrics {
  std::size_t tp = 0, fn = 0, tn = 0, fp = 0;
  std::optional<double> acc, tpr, tnr, fpr;

  std::string summary() const;
};

Metrics compute_metrics(const std::vector<int>& truth, const std::vector<int>& predicted);

}  // namespace pdfgraph::gin
