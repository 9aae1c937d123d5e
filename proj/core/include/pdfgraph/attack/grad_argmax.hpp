#pragma once

#include "pdfgraph/attack/report.hpp"

namespace pdfgraph::attack {

// dLoss(true class)/dA for every ordered node pair, adjacency treated as
// continuous weights. Throws when the graph exceeds the dense-pair cap.
nn::Matrix edge_gradients(gin::GinModel& model, const Aorg& aorg, int true_label);

struct GradArgmaxResult {
  AttackReport report;
  Aorg perturbed;
};

// Greedy white-box loop: among legal moves (remove an existing edge with
// negative gradient, add an absent one with positive gradient) apply the
// single move of largest magnitude, recomputing gradients after each move
// unless static_gradients is set. Stops on label flip, exhausted budget,
// or no legal move.
GradArgmaxResult grad_argmax_attack(gin::GinModel& model, const Aorg& clean,
                                    const AttackBudget& budget, bool static_gradients = false);

}  // namespace pdfgraph::attack
