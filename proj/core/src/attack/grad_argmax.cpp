#include "pdfgraph/attack/grad_argmax.hpp"

#include <cmath>
#include <stdexcept>

namespace pdfgraph::attack {
namespace {

// Rebuilds the edge set from continuous weights so the perturbed Aorg stays
// consistent with its adjacency.
void sync_edges(Aorg& aorg, const nn::Matrix& A) {
  aorg.org.edges.clear();
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (i != j && A(i, j) > 0.5)
        aorg.org.edges.insert({aorg.org.nodes[static_cast<std::size_t>(i)].first,
                               aorg.org.nodes[static_cast<std::size_t>(j)].first});
}

}  // namespace

nn::Matrix edge_gradients(gin::GinModel& model, const Aorg& aorg, int true_label) {
  const std::size_t n = aorg.org.nodes.size();
  if (n > static_cast<std::size_t>(model.config().dense_pair_cap))
    throw std::invalid_argument("graph too large for dense pair enumeration");
  gin::GraphGrads grads;
  model.loss(aorg, true_label, false, &grads);
  return grads.d_adjacency;
}

GradArgmaxResult grad_argmax_attack(gin::GinModel& model, const Aorg& clean,
                                    const AttackBudget& budget, bool static_gradients) {
  if (!clean.label) throw std::invalid_argument("attack needs the sample's true label");
  const int truth = *clean.label;
  const bool sym = model.config().symmetrize;
  const std::size_t n = clean.org.nodes.size();

  GradArgmaxResult result;
  result.perturbed = clean;
  AttackReport& report = result.report;
  report.method = "gradargmax";
  report.true_label = truth;

  QueryOracle oracle(model);
  report.initial_label = oracle.label(result.perturbed);
  report.final_label = report.initial_label;
  if (report.initial_label != truth) {
    report.success = true;
    report.queries_used = oracle.count();
    report.rpr = compute_rpr(report, clean);
    return result;
  }

  nn::Matrix A = result.perturbed.adjacency(sym);
  nn::Matrix G;
  bool have_gradients = false;
  int gradient_evals = 0;

  while (static_cast<int>(report.edits.size()) < budget.max_edits) {
    if (!have_gradients || !static_gradients) {
      G = edge_gradients(model, result.perturbed, truth);
      ++gradient_evals;  // gradient evaluations are model evaluations too
      have_gradients = true;
    }

    double best_mag = 0.0;
    Eigen::Index bu = -1, bv = -1;
    bool best_add = false;
    for (Eigen::Index u = 0; u < static_cast<Eigen::Index>(n); ++u) {
      for (Eigen::Index v = sym ? u + 1 : 0; v < static_cast<Eigen::Index>(n); ++v) {
        if (u == v) continue;
        const double g = sym ? G(u, v) + G(v, u) : G(u, v);
        const bool present = A(u, v) > 0.5;
        const bool legal = present ? g < 0.0 : g > 0.0;
        if (!legal) continue;
        if (std::abs(g) > best_mag) {
          best_mag = std::abs(g);
          bu = u;
          bv = v;
          best_add = !present;
        }
      }
    }
    if (bu < 0) break;  // no legal move

    A(bu, bv) = best_add ? 1.0 : 0.0;
    if (sym) A(bv, bu) = best_add ? 1.0 : 0.0;
    sync_edges(result.perturbed, A);

    AttackEdit edit;
    edit.kind = best_add ? AttackEdit::Kind::AddEdge : AttackEdit::Kind::RemoveEdge;
    edit.a = clean.org.nodes[static_cast<std::size_t>(bu)].first;
    edit.b = clean.org.nodes[static_cast<std::size_t>(bv)].first;
    edit.edge_changes = 1;
    report.edits.push_back(edit);

    report.final_label = oracle.label(result.perturbed);
    if (report.final_label != truth) {
      report.success = true;
      break;
    }
  }

  report.queries_used = oracle.count() + gradient_evals;
  report.rpr = compute_rpr(report, clean);
  return result;
}

}  // namespace pdfgraph::attack
