#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pdfgraph::pdf {

// Identifier of an indirect object. Rendered as "<number>-<version>".
struct ObjectId {
  std::uint32_t number = 0;
  std::uint32_t version = 0;

  auto operator<=>(const ObjectId&) const = default;

  std::string str() const {
    return std::to_string(number) + "-" + std::to_string(version);
  }

  // Parses the "<n>-<v>" rendering; rejects anything else.
  static std::optional<ObjectId> parse(std::string_view text);
};

}  // namespace pdfgraph::pdf
