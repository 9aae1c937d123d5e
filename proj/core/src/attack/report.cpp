#include "pdfgraph/attack/report.hpp"

namespace pdfgraph::attack {

std::string AttackEdit::describe() const {
  switch (kind) {
    case Kind::AddEdge: return "add_edge " + a.str() + " -> " + b.str();
    case Kind::RemoveEdge: return "remove_edge " + a.str() + " -> " + b.str();
    case Kind::InjectNode: return "inject_node " + a.str() + " attach " + b.str();
    case Kind::DeleteNode: return "delete_node " + a.str();
    case Kind::PerturbNode: return "perturb_node " + a.str();
  }
  return "?";
}

std::string AttackReport::to_text() const {
  std::string out;
  out += "sample\t" + sample_id + "\n";
  out += "method\t" + method + "\n";
  out += "true_label\t" + std::to_string(true_label) + "\n";
  out += "initial_label\t" + std::to_string(initial_label) + "\n";
  out += "final_label\t" + std::to_string(final_label) + "\n";
  out += "queries\t" + std::to_string(queries_used) + "\n";
  out += "edits\t" + std::to_string(edits.size()) + "\n";
  for (const auto& e : edits) out += "  " + e.describe() + "\n";
  out += "rpr\t" + std::to_string(rpr) + "\n";
  out += "success\t" + std::string(success ? "1" : "0") + "\n";
  return out;
}

double compute_rpr(const AttackReport& report, const Aorg& clean, RprDenominator denom) {
  long edge_edits = 0;
  for (const auto& e : report.edits) edge_edits += e.edge_changes;

  const std::size_t n = clean.org.nodes.size();
  if (n < 2) return report.edits.empty() ? 0.0 : 1.0;

  double max_edges;
  if (denom == RprDenominator::MaxEdges) {
    max_edges = static_cast<double>(n) * static_cast<double>(n - 1);
  } else {
    max_edges = static_cast<double>(clean.org.edges.size());
    if (max_edges == 0.0) return report.edits.empty() ? 0.0 : 1.0;
  }
  const double rpr = static_cast<double>(edge_edits) / max_edges;
  return rpr < 0.0 ? 0.0 : (rpr > 1.0 ? 1.0 : rpr);
}

double compute_tra(const std::vector<AttackReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("TRA over an empty sample set");
  std::size_t still_correct = 0;
  for (const auto& r : reports)
    if (r.final_label == r.true_label) ++still_correct;
  return static_cast<double>(still_correct) / static_cast<double>(reports.size());
}

}  // namespace pdfgraph::attack
