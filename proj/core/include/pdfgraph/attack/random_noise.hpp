#pragma once

#include "pdfgraph/attack/report.hpp"
#include "pdfgraph/util/rng.hpp"

namespace pdfgraph::attack {

struct RandomNoiseConfig {
  double sigma = -1.0;  // < 0: use 0.1 x per-dimension feature std
  int top_k = 3;        // nodes perturbed, by degree centrality
};

// Label-only black-box: the top-k nodes by (in+out) degree get fresh
// Gaussian feature noise each attempt until the label flips or the query
// budget runs out. sigma = 0 leaves features untouched.
AttackReport random_noise_attack(gin::GinModel& model, const Aorg& clean,
                                 const RandomNoiseConfig& config, const AttackBudget& budget,
                                 Rng& rng);

}  // namespace pdfgraph::attack
