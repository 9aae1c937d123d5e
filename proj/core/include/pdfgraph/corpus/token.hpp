#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdfgraph/graph/org.hpp"
#include "pdfgraph/ir/entry.hpp"

namespace pdfgraph::corpus {

using pdf::ObjectId;

using TokenId = std::uint32_t;

// "<Attribute>_<VType>" with the attribute's leading '/' stripped and inner
// slashes kept; a blank attribute leaves the vtype alone ("stream").
std::string tokenize(const ir::IrEntry& entry);

// One sentence per object, token order = entry order. The Value field is
// dropped entirely.
struct Sentence {
  ObjectId object;
  std::vector<std::string> tokens;

  bool operator==(const Sentence&) const = default;
};

std::vector<Sentence> sentences_from(const ir::IrProgram& program);
std::vector<Sentence> sentences_from(const graph::Org& org);

}  // namespace pdfgraph::corpus
