#include "pdfgraph/pdf/value.hpp"

#include <charconv>

namespace pdfgraph::pdf {

std::optional<ObjectId> ObjectId::parse(std::string_view text) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 >= text.size())
    return std::nullopt;
  ObjectId id;
  const auto num = text.substr(0, dash);
  const auto ver = text.substr(dash + 1);
  auto r1 = std::from_chars(num.data(), num.data() + num.size(), id.number);
  auto r2 = std::from_chars(ver.data(), ver.data() + ver.size(), id.version);
  if (r1.ec != std::errc{} || r1.ptr != num.data() + num.size()) return std::nullopt;
  if (r2.ec != std::errc{} || r2.ptr != ver.data() + ver.size()) return std::nullopt;
  return id;
}

const PdfValue* Dictionary::find(std::string_view key) const {
  for (const auto& [name, value] : entries)
    if (name.text == key) return &value;
  return nullptr;
}

}  // namespace pdfgraph::pdf
