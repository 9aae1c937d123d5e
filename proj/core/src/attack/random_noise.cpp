#include "pdfgraph/attack/random_noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdfgraph::attack {

AttackReport random_noise_attack(gin::GinModel& model, const Aorg& clean,
                                 const RandomNoiseConfig& config, const AttackBudget& budget,
                                 Rng& rng) {
  if (!clean.label) throw std::invalid_argument("attack needs the sample's true label");
  if (clean.org.nodes.empty()) throw std::invalid_argument("empty graph cannot be attacked");
  const int truth = *clean.label;
  const std::size_t n = clean.org.nodes.size();

  AttackReport report;
  report.method = "randomnoise";
  report.true_label = truth;

  QueryOracle oracle(model);
  report.initial_label = oracle.label(clean);
  report.final_label = report.initial_label;
  if (report.initial_label != truth) {
    report.success = true;
    report.queries_used = oracle.count();
    report.rpr = compute_rpr(report, clean);
    return report;
  }

  // Degree centrality (in + out), descending, ties by ObjectId.
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : clean.org.edges) {
    const std::size_t i = clean.org.node_index(a);
    const std::size_t j = clean.org.node_index(b);
    if (i < n) ++degree[i];
    if (j < n) ++degree[j];
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (degree[a] != degree[b]) return degree[a] > degree[b];
    return clean.org.nodes[a].first < clean.org.nodes[b].first;
  });
  const std::size_t k = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(config.top_k, 0)));
  order.resize(k);

  // Per-dimension noise scale.
  const Eigen::Index dim = clean.features.cols();
  nn::Vector sigma(dim);
  if (config.sigma >= 0.0) {
    sigma.setConstant(config.sigma);
  } else {
    for (Eigen::Index d = 0; d < dim; ++d) {
      const double mean = clean.features.col(d).mean();
      const double var = (clean.features.col(d).array() - mean).square().mean();
      sigma(d) = 0.1 * std::sqrt(var);
    }
  }

  Aorg perturbed = clean;
  while (oracle.count() < budget.max_queries) {
    perturbed.features = clean.features;
    for (std::size_t idx : order)
      for (Eigen::Index d = 0; d < dim; ++d)
        perturbed.features(static_cast<Eigen::Index>(idx), d) += rng.normal(0.0, sigma(d));
    const int label = oracle.label(perturbed);
    if (label != truth) {
      report.success = true;
      report.final_label = label;
      for (std::size_t idx : order) {
        AttackEdit edit;
        edit.kind = AttackEdit::Kind::PerturbNode;
        edit.a = clean.org.nodes[idx].first;
        edit.edge_changes = 0;
        report.edits.push_back(edit);
      }
      break;
    }
    if (sigma.maxCoeff() <= 0.0) break;  // sigma 0 cannot flip a correct sample
  }

  report.queries_used = oracle.count();
  report.rpr = compute_rpr(report, clean);
  return report;
}

}  // namespace pdfgraph::attack
