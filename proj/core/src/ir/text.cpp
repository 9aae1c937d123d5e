#include "pdfgraph/ir/text.hpp"

namespace pdfgraph::ir {

std::string IrEntry::line() const {
  std::string out = index.str();
  out += ", ";
  out += attribute;
  out += ", ";
  out += vtype_name(vtype);
  out += ", ";
  out += value;
  return out;
}

std::string emit_ir_text(const IrProgram& program) {
  std::string out;
  for (const auto& [id, entries] : program.entries) {
    for (const auto& e : entries) {
      out += e.line();
      out += "\n";
    }
  }
  return out;
}

IrProgram parse_ir_text(const std::string& text) {
  IrProgram program;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string_view line(text.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    const std::size_t c1 = line.find(", ");
    if (c1 == std::string_view::npos) throw IrParseError(line_no, "missing field separator");
    const std::size_t c2 = line.find(", ", c1 + 2);
    if (c2 == std::string_view::npos) throw IrParseError(line_no, "missing vtype field");
    const std::size_t c3 = line.find(", ", c2 + 2);
    if (c3 == std::string_view::npos) throw IrParseError(line_no, "missing value field");

    const auto id = ObjectId::parse(line.substr(0, c1));
    if (!id) throw IrParseError(line_no, "malformed index");
    const auto vt = vtype_from_name(line.substr(c2 + 2, c3 - c2 - 2));
    if (!vt) throw IrParseError(line_no, "unknown vtype");

    IrEntry entry;
    entry.index = *id;
    entry.attribute = std::string(line.substr(c1 + 2, c2 - c1 - 2));
    entry.vtype = *vt;
    entry.value = std::string(line.substr(c3 + 2));
    program.entries[*id].push_back(std::move(entry));
  }
  return program;
}

}  // namespace pdfgraph::ir
