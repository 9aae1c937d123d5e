#pragma once

#include <string>
#include <vector>

#include "pdfgraph/gin/aorg.hpp"
#include "pdfgraph/gin/model.hpp"

namespace pdfgraph::attack {

using gin::Aorg;
using pdf::ObjectId;

struct AttackBudget {
  int max_edits = 1000;
  int max_queries = 1000;
};

struct AttackEdit {
  enum class Kind { AddEdge, RemoveEdge, InjectNode, DeleteNode, PerturbNode };
  Kind kind;
  ObjectId a{};          // edge source / affected node
  ObjectId b{};          // edge target
  int edge_changes = 0;  // edge-level changes this edit induces (RPR numerator)

  std::string describe() const;
};

struct AttackReport {
  std::string sample_id;
  std::string method;
  std::vector<AttackEdit> edits;
  int queries_used = 0;
  bool success = false;
  double rpr = 0.0;
  int true_label = 0;
  int initial_label = 0;
  int final_label = 0;

  std::string to_text() const;
};

enum class RprDenominator { MaxEdges, OriginalEdges };

// Edge-level edits over the maximum |V|(|V|-1) directed edges of the clean
// graph (or |E| under the alternative flag). Graphs with |V| < 2 define
// rpr as 0 without edits and 1 otherwise.
double compute_rpr(const AttackReport& report, const Aorg& clean,
                   RprDenominator denom = RprDenominator::MaxEdges);

// Fraction of attacked samples the model still classifies correctly.
double compute_tra(const std::vector<AttackReport>& reports);

// Counts every model evaluation an attack performs; black-box budgets and
// the accounting tests both hang off this.
class QueryOracle {
public:
  explicit QueryOracle(const gin::GinModel& model) : model_(model) {}

  int label(const Aorg& aorg) {
    ++count_;
    return model_.classify(aorg).first;
  }
  double confidence(const Aorg& aorg, int cls) {
    ++count_;
    return model_.classify(aorg).second[static_cast<std::size_t>(cls)];
  }
  int count() const { return count_; }

private:
  const gin::GinModel& model_;
  int count_ = 0;
};

}  // namespace pdfgraph::attack
