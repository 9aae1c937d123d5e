#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdfgraph/ir/entry.hpp"

namespace pdfgraph::graph {

using ir::IrEntry;
using ir::IrProgram;
using pdf::ObjectId;

// Directed object-reference graph. Nodes keep their IR entries; edges are
// deduplicated ordered pairs.
struct Org {
  std::vector<std::pair<ObjectId, std::vector<IrEntry>>> nodes;  // ascending id
  std::set<std::pair<ObjectId, ObjectId>> edges;

  std::size_t node_index(ObjectId id) const;  // nodes.size() when absent
  bool has_edge(ObjectId a, ObjectId b) const { return edges.contains({a, b}); }

  std::string to_json() const;
  static Org from_json(const std::string& text);

  bool operator==(const Org&) const = default;
};

// Reference targets in one entry: the ref value itself, every element of a
// ref_list, and the "n-v"-shaped elements of a mix_list. Malformed ref text
// inside a list is skipped (and counted when diagnostics is given).
std::vector<ObjectId> extract_refs(const IrEntry& entry, std::size_t* skipped = nullptr);

// One node per object in program order; an edge per referenced target, with
// unknown targets materialized as empty nodes.
Org build_org(const IrProgram& program);

}  // namespace pdfgraph::graph
