#include "pdfgraph/attack/genetic.hpp"

#include <algorithm>
#include <stdexcept>

namespace pdfgraph::attack {
namespace {

struct Gene {
  enum class Kind { FlipEdge, InjectNode, DeleteNode };
  Kind kind = Kind::FlipEdge;
  std::size_t x = 0;  // flip: first node; inject: feature source; delete: node
  std::size_t y = 0;  // flip: second node; inject: attach target
};

using Individual = std::vector<Gene>;

Gene random_gene(std::size_t n, Rng& rng) {
  Gene g;
  if (n < 2) {
    g.kind = Gene::Kind::InjectNode;
    g.x = 0;
    g.y = 0;
    return g;
  }
  const double u = rng.uniform_real();
  if (u < 0.6) {
    g.kind = Gene::Kind::FlipEdge;
    g.x = static_cast<std::size_t>(rng.uniform_index(n));
    do {
      g.y = static_cast<std::size_t>(rng.uniform_index(n));
    } while (g.y == g.x);
  } else if (u < 0.8) {
    g.kind = Gene::Kind::InjectNode;
    g.x = static_cast<std::size_t>(rng.uniform_index(n));
    g.y = static_cast<std::size_t>(rng.uniform_index(n));
  } else {
    g.kind = Gene::Kind::DeleteNode;
    g.x = static_cast<std::size_t>(rng.uniform_index(n));
  }
  return g;
}

struct Applied {
  Aorg aorg;
  std::vector<AttackEdit> edits;
};

// Genes index the clean node list; edits on deleted nodes become no-ops.
Applied apply_genes(const Aorg& clean, const Individual& genes, bool sym) {
  const std::size_t n = clean.org.nodes.size();
  nn::Matrix A = clean.adjacency(sym);
  std::vector<bool> deleted(n, false);
  std::size_t alive = n;

  struct Injected {
    std::size_t feature_src;
    std::size_t attach_to;
  };
  std::vector<Injected> injected;
  Applied out;

  for (const Gene& g : genes) {
    AttackEdit edit;
    switch (g.kind) {
      case Gene::Kind::FlipEdge: {
        if (g.x >= n || g.y >= n || deleted[g.x] || deleted[g.y]) continue;
        const auto i = static_cast<Eigen::Index>(g.x);
        const auto j = static_cast<Eigen::Index>(g.y);
        const bool present = A(i, j) > 0.5;
        A(i, j) = present ? 0.0 : 1.0;
        if (sym) A(j, i) = A(i, j);
        edit.kind = present ? AttackEdit::Kind::RemoveEdge : AttackEdit::Kind::AddEdge;
        edit.a = clean.org.nodes[g.x].first;
        edit.b = clean.org.nodes[g.y].first;
        edit.edge_changes = 1;
        break;
      }
      case Gene::Kind::InjectNode: {
        if (n == 0 || (g.x < n && deleted[g.x]) || (g.y < n && deleted[g.y])) continue;
        injected.push_back({std::min(g.x, n - 1), std::min(g.y, n - 1)});
        edit.kind = AttackEdit::Kind::InjectNode;
        edit.a = ObjectId{static_cast<std::uint32_t>(1000000 + injected.size()), 0};
        edit.b = clean.org.nodes[injected.back().attach_to].first;
        edit.edge_changes = 1;
        break;
      }
      case Gene::Kind::DeleteNode: {
        if (g.x >= n || deleted[g.x] || alive <= 1) continue;
        const auto i = static_cast<Eigen::Index>(g.x);
        int removed = 0;
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
          if (A(i, j) > 0.5) ++removed;
          if (A(j, i) > 0.5 && j != i) ++removed;
          A(i, j) = 0.0;
          A(j, i) = 0.0;
        }
        deleted[g.x] = true;
        --alive;
        edit.kind = AttackEdit::Kind::DeleteNode;
        edit.a = clean.org.nodes[g.x].first;
        edit.edge_changes = sym ? removed / 2 : removed;
        break;
      }
    }
    out.edits.push_back(edit);
  }

  // Materialize the surviving + injected nodes.
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < n; ++i)
    if (!deleted[i]) survivors.push_back(i);
  const std::size_t total = survivors.size() + injected.size();

  Aorg result;
  result.label = clean.label;
  result.features = nn::Matrix::Zero(static_cast<Eigen::Index>(total), clean.features.cols());
  std::vector<std::size_t> new_index(n, SIZE_MAX);
  for (std::size_t k = 0; k < survivors.size(); ++k) {
    new_index[survivors[k]] = k;
    result.org.nodes.emplace_back(clean.org.nodes[survivors[k]].first,
                                  clean.org.nodes[survivors[k]].second);
    result.features.row(static_cast<Eigen::Index>(k)) =
        clean.features.row(static_cast<Eigen::Index>(survivors[k]));
  }
  for (std::size_t k = 0; k < injected.size(); ++k) {
    const std::size_t row = survivors.size() + k;
    result.org.nodes.emplace_back(ObjectId{static_cast<std::uint32_t>(1000000 + k + 1), 0},
                                  std::vector<graph::IrEntry>{});
    result.features.row(static_cast<Eigen::Index>(row)) =
        clean.features.row(static_cast<Eigen::Index>(injected[k].feature_src));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (deleted[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (deleted[j] || i == j) continue;
      if (A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0.5)
        result.org.edges.insert(
            {result.org.nodes[new_index[i]].first, result.org.nodes[new_index[j]].first});
    }
  }
  for (std::size_t k = 0; k < injected.size(); ++k) {
    const std::size_t tgt = new_index[injected[k].attach_to];
    if (tgt == SIZE_MAX) continue;
    const ObjectId inj_id = result.org.nodes[survivors.size() + k].first;
    result.org.edges.insert({inj_id, result.org.nodes[tgt].first});
    if (sym) result.org.edges.insert({result.org.nodes[tgt].first, inj_id});
  }
  out.aorg = std::move(result);
  return out;
}

}  // namespace

AttackReport genetic_attack(gin::GinModel& model, const Aorg& clean, const AttackBudget& budget,
                            const GeneticConfig& config, Rng& rng) {
  if (!clean.label) throw std::invalid_argument("attack needs the sample's true label");
  if (clean.org.nodes.empty()) throw std::invalid_argument("empty graph cannot be attacked");
  const int truth = *clean.label;
  const bool sym = model.config().symmetrize;

  AttackReport report;
  report.method = "genetic";
  report.true_label = truth;

  QueryOracle oracle(model);
  const double clean_conf = oracle.confidence(clean, truth);
  report.initial_label = clean_conf >= 0.5 ? truth : 1 - truth;
  report.final_label = report.initial_label;
  report.success = report.initial_label != truth;

  const int max_genes = std::max(0, std::min(config.max_genes, budget.max_edits));
  if (report.success || config.generations <= 0 || config.population <= 0 || max_genes == 0) {
    report.queries_used = oracle.count();
    report.rpr = compute_rpr(report, clean);
    return report;
  }

  struct Scored {
    Individual genes;
    double fitness = 0.0;  // 1 - confidence(true)
  };

  Individual best_genes;
  double best_fitness = 1.0 - clean_conf;

  auto evaluate = [&](const Individual& genes) -> std::optional<double> {
    if (oracle.count() >= budget.max_queries) return std::nullopt;
    const Applied applied = apply_genes(clean, genes, sym);
    const double conf = oracle.confidence(applied.aorg, truth);
    return 1.0 - conf;
  };

  std::vector<Scored> population;
  population.reserve(static_cast<std::size_t>(config.population));
  bool flipped = false;

  auto consider = [&](const Individual& genes, double fitness) {
    if (fitness > best_fitness) {
      best_fitness = fitness;
      best_genes = genes;
    }
    if (fitness > 0.5) flipped = true;
  };

  for (int i = 0; i < config.population && !flipped; ++i) {
    Scored s;
    const int len = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_genes)));
    for (int k = 0; k < len; ++k) s.genes.push_back(random_gene(clean.org.nodes.size(), rng));
    const auto fit = evaluate(s.genes);
    if (!fit) break;
    s.fitness = *fit;
    consider(s.genes, s.fitness);
    population.push_back(std::move(s));
  }

  for (int gen = 1; gen < config.generations && !flipped && !population.empty(); ++gen) {
    if (oracle.count() >= budget.max_queries) break;
    std::vector<Scored> next;
    next.reserve(population.size());

    // Elitism keeps the best individual verbatim (no re-query needed).
    const auto best_it =
        std::max_element(population.begin(), population.end(),
                         [](const Scored& a, const Scored& b) { return a.fitness < b.fitness; });
    for (int e = 0; e < config.elitism && e < static_cast<int>(population.size()); ++e)
      next.push_back(*best_it);

    auto tournament = [&]() -> const Scored& {
      const Scored* winner = nullptr;
      for (int t = 0; t < config.tournament; ++t) {
        const Scored& cand = population[static_cast<std::size_t>(
            rng.uniform_index(population.size()))];
        if (!winner || cand.fitness > winner->fitness) winner = &cand;
      }
      return *winner;
    };

    while (next.size() < population.size() && !flipped) {
      const Individual& pa = tournament().genes;
      const Individual& pb = tournament().genes;
      Individual child;
      const std::size_t cut_a = pa.empty() ? 0 : rng.uniform_index(pa.size() + 1);
      const std::size_t cut_b = pb.empty() ? 0 : rng.uniform_index(pb.size() + 1);
      child.assign(pa.begin(), pa.begin() + static_cast<std::ptrdiff_t>(cut_a));
      child.insert(child.end(), pb.begin() + static_cast<std::ptrdiff_t>(cut_b), pb.end());
      if (child.empty()) child.push_back(random_gene(clean.org.nodes.size(), rng));
      if (child.size() > static_cast<std::size_t>(max_genes))
        child.resize(static_cast<std::size_t>(max_genes));
      for (Gene& g : child)
        if (rng.bernoulli(config.mutation_rate)) g = random_gene(clean.org.nodes.size(), rng);

      const auto fit = evaluate(child);
      if (!fit) {
        next.clear();
        break;  // query limit mid-generation: best-so-far stands
      }
      consider(child, *fit);
      next.push_back(Scored{std::move(child), *fit});
    }
    if (next.empty()) break;
    population = std::move(next);
  }

  const Applied best_applied = apply_genes(clean, best_genes, sym);
  report.edits = best_applied.edits;
  report.final_label = best_fitness > 0.5 ? 1 - truth : truth;
  report.success = report.final_label != truth;
  report.queries_used = oracle.count();
  report.rpr = compute_rpr(report, clean);
  return report;
}

}  // namespace pdfgraph::attack
