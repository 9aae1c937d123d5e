#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pdfgraph/pdf/object_id.hpp"
#include "pdfgraph/pdf/value.hpp"

namespace pdfgraph::pdf {

// Repair taxonomy. E1 string overflow, E2 missing obj, E3 incomplete
// key-value pairs, E4 missing header version, E5 trailer without /Root,
// E6 missing %%EOF, E7 stream without usable /Length, E8 broken xref.
enum class RepairCode { E1 = 1, E2, E3, E4, E5, E6, E7, E8 };

std::string_view repair_code_name(RepairCode code);

struct RepairEvent {
  RepairCode code;
  std::optional<ObjectId> object;
  std::size_t byte_offset = 0;
  std::string description;

  // "<code>\t<object-id|->\t<offset>\t<description>"
  std::string report_line() const;
};

struct RawDocument {
  std::map<ObjectId, PdfValue> objects;  // ascending (number, version)
  std::optional<std::string> header_version;
  std::vector<RepairEvent> diagnostics;
  std::optional<Dictionary> trailer;
  bool encrypted = false;

  // Canonical emission of the repaired objects as a well-formed body with
  // header, xref and trailer. Re-parsing the result yields an equal object
  // map and no diagnostics.
  Bytes serialize_repaired() const;
};

struct ScanHit {
  ObjectId id;
  std::size_t begin = 0;  // offset of the object header
  std::size_t end = 0;    // one past "endobj", or the next header / EOF
};

// Linear scan for "<int> <int> obj" headers; never consults the xref table.
std::vector<ScanHit> scan_objects(std::string_view bytes);

// Recoverable lexical failure inside parse_value. open_stack lists the
// unterminated constructs from outermost to innermost; the repair layer
// turns it into a completion suffix.
enum class OpenConstruct { Array, Dictionary, LiteralString, HexString };

class MalformedValue : public std::runtime_error {
public:
  MalformedValue(std::size_t offset, std::vector<OpenConstruct> open, std::string what,
                 std::optional<std::size_t> truncate_hint = std::nullopt)
      : std::runtime_error(std::move(what)), offset_(offset), open_(std::move(open)),
        truncate_hint_(truncate_hint) {}

  std::size_t offset() const { return offset_; }
  const std::vector<OpenConstruct>& open_stack() const { return open_; }

  // Set when a foreign keyword (endobj/endstream/stream) interrupted the
  // structure: the retry must treat this position as end-of-span.
  std::optional<std::size_t> truncate_hint() const { return truncate_hint_; }

private:
  std::size_t offset_;
  std::vector<OpenConstruct> open_;
  std::optional<std::size_t> truncate_hint_;
};

// Parses one value starting at the first non-whitespace byte at or after
// cursor. Throws MalformedValue on unterminated constructs; inline repairs
// (missing dictionary values) are applied silently and reported through
// the events vector when provided.
std::pair<PdfValue, std::size_t> parse_value(std::string_view bytes, std::size_t cursor,
                                             std::vector<RepairEvent>* events = nullptr);

// Textual E1 repair: closes an unterminated literal/hex string at the end of
// an object span, then any open arrays and dictionaries innermost-first, then
// endobj. Returns the span unchanged (and no event) when nothing is open.
std::pair<Bytes, std::optional<RepairEvent>> repair_string_overflow(std::string_view object_span);

// E3 repair over a dictionary span: fills missing values with null,
// completes truncated arrays/nested dictionaries and the closing ">>".
std::pair<PdfValue, std::vector<RepairEvent>> repair_incomplete_pairs(std::string_view dict_span);

// E2 repair: inserts Null for a referenced-but-undefined object. No-op if
// the object already exists.
std::optional<RepairEvent> synthesize_missing_object(RawDocument& doc, ObjectId ref,
                                                     std::size_t byte_offset);

// E4-E8 detection over the whole file: header version, trailer /Root,
// %%EOF, xref consistency. Appends events to doc.diagnostics; never fails.
void apply_structural_fallbacks(std::string_view bytes, RawDocument& doc);

// Total parse: any byte input yields a document. Combines the linear scan,
// value parsing, and every repair; diagnostics are sorted by byte offset.
RawDocument parse_document(std::string_view bytes);

}  // namespace pdfgraph::pdf
