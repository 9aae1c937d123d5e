#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pdfgraph/pdf/object_id.hpp"
#include "pdfgraph/util/bytes.hpp"

namespace pdfgraph::pdf {

class PdfValue;

// Numbers keep their source text so IR emission never round-trips through
// floating point.
struct Numeric {
  std::string text;
  double value = 0.0;
  bool operator==(const Numeric& o) const { return text == o.text; }
};

struct LiteralString {
  Bytes decoded;  // escapes resolved
  Bytes raw;      // source bytes between the parentheses
  bool operator==(const LiteralString& o) const { return raw == o.raw; }
};

struct HexString {
  Bytes decoded;
  std::string raw;  // source text between the angle brackets
  bool operator==(const HexString& o) const { return raw == o.raw; }
};

struct Name {
  std::string text;  // includes the leading '/', kept verbatim (no #xx decoding)
  bool operator==(const Name& o) const { return text == o.text; }
};

struct Boolean {
  bool value = false;
  bool operator==(const Boolean& o) const { return value == o.value; }
};

struct Null {
  bool operator==(const Null&) const { return true; }
};

struct Reference {
  ObjectId target;
  bool operator==(const Reference& o) const { return target == o.target; }
};

struct Array {
  std::vector<PdfValue> elements;
  bool operator==(const Array& o) const;
};

// Insertion-ordered key/value map; PDF dictionary keys are Names.
struct Dictionary {
  std::vector<std::pair<Name, PdfValue>> entries;

  const PdfValue* find(std::string_view key) const;
  bool operator==(const Dictionary& o) const;
};

struct Stream {
  Dictionary dict;
  Bytes data;          // raw bytes between stream/endstream
  bool length_from_scan = false;  // true when /Length was unusable (E7 path)
  bool operator==(const Stream& o) const { return dict == o.dict && data == o.data; }
};

class PdfValue {
public:
  using Storage = std::variant<Null, Boolean, Numeric, LiteralString, HexString,
                               Name, Reference, Array, Dictionary, Stream>;

  PdfValue() : storage_(Null{}) {}
  template <typename T,
            typename = std::enable_if_t<std::is_constructible_v<Storage, T&&>>>
  PdfValue(T&& v) : storage_(std::forward<T>(v)) {}

  template <typename T> bool is() const { return std::holds_alternative<T>(storage_); }
  template <typename T> const T& get() const { return std::get<T>(storage_); }
  template <typename T> T& get() { return std::get<T>(storage_); }
  template <typename T> const T* get_if() const { return std::get_if<T>(&storage_); }

  const Storage& storage() const { return storage_; }

  bool operator==(const PdfValue& o) const { return storage_ == o.storage_; }

private:
  Storage storage_;
};

inline bool Array::operator==(const Array& o) const { return elements == o.elements; }
inline bool Dictionary::operator==(const Dictionary& o) const { return entries == o.entries; }

}  // namespace pdfgraph::pdf
