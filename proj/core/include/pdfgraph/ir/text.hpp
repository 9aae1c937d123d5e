#pragma once

#include <stdexcept>
#include <string>

#include "pdfgraph/ir/entry.hpp"

namespace pdfgraph::ir {

class IrParseError : public std::runtime_error {
public:
  IrParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// One line per entry; stream payloads live in "<index>.bin" side files and
// are not part of the text.
std::string emit_ir_text(const IrProgram& program);

// Inverse of emit_ir_text modulo stream blobs. Throws IrParseError with the
// 1-based line number on malformed input.
IrProgram parse_ir_text(const std::string& text);

}  // namespace pdfgraph::ir
