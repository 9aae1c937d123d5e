#include "pdfgraph/corpus/token.hpp"

namespace pdfgraph::corpus {

std::string tokenize(const ir::IrEntry& entry) {
  if (entry.attribute.empty()) return std::string(ir::vtype_name(entry.vtype));
  std::string attr = entry.attribute;
  if (attr.front() == '/') attr.erase(attr.begin());
  return attr + "_" + std::string(ir::vtype_name(entry.vtype));
}

std::vector<Sentence> sentences_from(const ir::IrProgram& program) {
  std::vector<Sentence> out;
  out.reserve(program.entries.size());
  for (const auto& [id, entries] : program.entries) {
    Sentence s;
    s.object = id;
    s.tokens.reserve(entries.size());
    for (const auto& e : entries) s.tokens.push_back(tokenize(e));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> sentences_from(const graph::Org& org) {
  std::vector<Sentence> out;
  out.reserve(org.nodes.size());
  for (const auto& [id, entries] : org.nodes) {
    Sentence s;
    s.object = id;
    s.tokens.reserve(entries.size());
    for (const auto& e : entries) s.tokens.push_back(tokenize(e));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace pdfgraph::corpus
