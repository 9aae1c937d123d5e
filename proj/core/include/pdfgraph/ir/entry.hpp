#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdfgraph/ir/vtype.hpp"
#include "pdfgraph/pdf/object_id.hpp"
#include "pdfgraph/util/bytes.hpp"

namespace pdfgraph::ir {

using pdf::ObjectId;

// One fixed-format line: Index, Attribute, VType, Value. Attribute is the
// slash-joined key path ("/OpenAction/JS"); it is blank for the stream
// declaration and for bare non-dictionary objects. Value is blank for
// dict headers, stream declarations, and nulls.
struct IrEntry {
  ObjectId index;
  std::string attribute;
  VType vtype = VType::Null;
  std::string value;

  bool operator==(const IrEntry&) const = default;

  // "<index>, <attribute>, <vtype>, <value>"
  std::string line() const;
};

struct IrProgram {
  std::map<ObjectId, std::vector<IrEntry>> entries;
  std::map<ObjectId, Bytes> stream_blobs;

  bool same_entries(const IrProgram& other) const { return entries == other.entries; }
  bool operator==(const IrProgram&) const = default;
};

}  // namespace pdfgraph::ir
