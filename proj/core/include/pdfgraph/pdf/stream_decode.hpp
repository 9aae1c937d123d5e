#pragma once

#include <optional>
#include <string>

#include "pdfgraph/pdf/value.hpp"

namespace pdfgraph::pdf {

struct DecodedStream {
  Bytes data;
  bool raw = false;  // payload returned undecoded (no/unsupported filter, or failure)
  std::optional<std::string> diagnostic;
};

// Total: FlateDecode payloads are inflated, anything else (including decode
// failures) comes back raw with a diagnostic. Never throws.
DecodedStream decode_stream(const Stream& stream);

}  // namespace pdfgraph::pdf
