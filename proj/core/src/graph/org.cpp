#include "pdfgraph/graph/org.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>

#include "pdfgraph/ir/text.hpp"

namespace pdfgraph::graph {
namespace {

using nlohmann::json;

// Splits a "[a,b,c]" list rendering into top-level elements (strings,
// nested lists and inline dicts may contain commas themselves).
std::vector<std::string> split_list_value(const std::string& value) {
  std::vector<std::string> out;
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') return out;
  int depth = 0;
  std::string cur;
  for (std::size_t i = 1; i + 1 < value.size(); ++i) {
    const char c = value[i];
    if (c == '[' || c == '(' || c == '<') ++depth;
    if (c == ']' || c == ')' || c == '>') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  if (!cur.empty() || !out.empty() || value.size() > 2) out.push_back(cur);
  return out;
}

}  // namespace

std::size_t Org::node_index(ObjectId id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].first == id) return i;
  return nodes.size();
}

std::vector<ObjectId> extract_refs(const IrEntry& entry, std::size_t* skipped) {
  std::vector<ObjectId> out;
  switch (entry.vtype) {
    case ir::VType::Ref: {
      if (auto id = ObjectId::parse(entry.value)) {
        out.push_back(*id);
      } else if (skipped) {
        ++*skipped;
      }
      break;
    }
    case ir::VType::RefList: {
      for (const auto& elem : split_list_value(entry.value)) {
        if (auto id = ObjectId::parse(elem)) {
          out.push_back(*id);
        } else if (skipped) {
          ++*skipped;
        }
      }
      break;
    }
    case ir::VType::MixList: {
      for (const auto& elem : split_list_value(entry.value)) {
        if (auto id = ObjectId::parse(elem)) out.push_back(*id);
      }
      break;
    }
    default:
      break;
  }
  return out;
}

Org build_org(const IrProgram& program) {
  Org org;
  org.nodes.reserve(program.entries.size());
  std::map<ObjectId, std::size_t> index;
  for (const auto& [id, entries] : program.entries) {
    index.emplace(id, org.nodes.size());
    org.nodes.emplace_back(id, entries);
  }
  std::vector<std::pair<ObjectId, ObjectId>> pending;
  for (const auto& [id, entries] : program.entries) {
    for (const auto& entry : entries) {
      for (const ObjectId& target : extract_refs(entry)) pending.emplace_back(id, target);
    }
  }
  for (const auto& [src, dst] : pending) {
    if (!index.contains(dst)) {
      // Mirror of the parser's E2: a dangling target becomes an empty node.
      index.emplace(dst, org.nodes.size());
      org.nodes.emplace_back(dst, std::vector<IrEntry>{});
    }
    org.edges.insert({src, dst});
  }
  std::sort(org.nodes.begin(), org.nodes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return org;
}

std::string Org::to_json() const {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& [id, entries] : nodes) {
    json node;
    node["id"] = id.str();
    node["ir"] = json::array();
    for (const auto& e : entries) node["ir"].push_back(e.line());
    doc["nodes"].push_back(std::move(node));
  }
  doc["edges"] = json::array();
  for (const auto& [a, b] : edges) doc["edges"].push_back(json::array({a.str(), b.str()}));
  return doc.dump(2) + "\n";
}

Org Org::from_json(const std::string& text) {
  const json doc = json::parse(text);
  Org org;
  for (const auto& node : doc.at("nodes")) {
    const auto id = ObjectId::parse(node.at("id").get<std::string>());
    if (!id) throw std::runtime_error("bad node id in graph file");
    std::vector<IrEntry> entries;
    std::string ir_text;
    for (const auto& line : node.at("ir")) {
      ir_text += line.get<std::string>();
      ir_text += "\n";
    }
    if (!ir_text.empty()) {
      ir::IrProgram prog = ir::parse_ir_text(ir_text);
      if (auto it = prog.entries.find(*id); it != prog.entries.end())
        entries = std::move(it->second);
    }
    org.nodes.emplace_back(*id, std::move(entries));
  }
  for (const auto& edge : doc.at("edges")) {
    const auto a = ObjectId::parse(edge.at(0).get<std::string>());
    const auto b = ObjectId::parse(edge.at(1).get<std::string>());
    if (!a || !b) throw std::runtime_error("bad edge in graph file");
    org.edges.insert({*a, *b});
  }
  return org;
}

}  // namespace pdfgraph::graph
