#pragma once

#include <optional>
#include <vector>

#include "pdfgraph/ir/entry.hpp"
#include "pdfgraph/pdf/parser.hpp"
#include "pdfgraph/pdf/value.hpp"

namespace pdfgraph::ir {

// Derived list tag for an array's elements: a single shared atomic kind
// yields its *_list, everything else (mixed kinds, nulls, nested
// composites, empty arrays) yields mix_list. Literal and hex strings both
// count as str.
VType classify_array(const std::vector<pdf::PdfValue>& elements);

// Converts one key/value pair rooted at key_path. Atomic values produce a
// single entry, arrays collapse to one list entry, dictionaries produce a
// header entry followed by their children with the extended path.
std::vector<IrEntry> convert_pair(ObjectId index, const std::string& key_path,
                                  const pdf::PdfValue& value);

// Converts a whole object body; streams yield the declaration entry, the
// dictionary entries, and the decoded payload.
std::pair<std::vector<IrEntry>, std::optional<Bytes>> convert_object(ObjectId index,
                                                                     const pdf::PdfValue& value);

IrProgram convert_document(const pdf::RawDocument& doc);

}  // namespace pdfgraph::ir
