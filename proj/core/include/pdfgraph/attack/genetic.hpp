#pragma once

#include "pdfgraph/attack/report.hpp"
#include "pdfgraph/util/rng.hpp"

namespace pdfgraph::attack {

struct GeneticConfig {
  int population = 100;
  int generations = 10;
  int tournament = 4;
  double mutation_rate = 0.1;
  int elitism = 1;
  int max_genes = 8;  // initial individuals draw 1..max_genes edits
};

// Score black-box search over edit lists {edge flip, node injection, node
// deletion}. Fitness = 1 - confidence(true class); every score lookup is
// one query against the limit. Hitting the limit mid-generation returns
// the best individual found so far.
AttackReport genetic_attack(gin::GinModel& model, const Aorg& clean, const AttackBudget& budget,
                            const GeneticConfig& config, Rng& rng);

}  // namespace pdfgraph::attack
