#pragma once

#include <optional>
#include <string_view>

namespace pdfgraph::ir {

// The 15 value-type tags: 6 atomic, stream, 2 composite, 6 list-derived.
// There deliberately is no null_list.
enum class VType {
  Num,
  Str,
  Name,
  Ref,
  Bool,
  Null,
  Stream,
  List,
  Dict,
  NumList,
  StrList,
  NameList,
  RefList,
  BoolList,
  MixList,
};

inline constexpr int kVTypeCount = 15;

std::string_view vtype_name(VType t);
std::optional<VType> vtype_from_name(std::string_view name);

}  // namespace pdfgraph::ir
