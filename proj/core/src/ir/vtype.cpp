#include "pdfgraph/ir/vtype.hpp"

#include <array>
#include <utility>

namespace pdfgraph::ir {
namespace {

constexpr std::array<std::pair<VType, std::string_view>, kVTypeCount> kNames{{
    {VType::Num, "num"},
    {VType::Str, "str"},
    {VType::Name, "name"},
    {VType::Ref, "ref"},
    {VType::Bool, "bool"},
    {VType::Null, "null"},
    {VType::Stream, "stream"},
    {VType::List, "list"},
    {VType::Dict, "dict"},
    {VType::NumList, "num_list"},
    {VType::StrList, "str_list"},
    {VType::NameList, "name_list"},
    {VType::RefList, "ref_list"},
    {VType::BoolList, "bool_list"},
    {VType::MixList, "mix_list"},
}};

}  // namespace

std::string_view vtype_name(VType t) {
  for (const auto& [v, n] : kNames)
    if (v == t) return n;
  return "?";
}

std::optional<VType> vtype_from_name(std::string_view name) {
  for (const auto& [v, n] : kNames)
    if (n == name) return v;
  return std::nullopt;
}

}  // namespace pdfgraph::ir
