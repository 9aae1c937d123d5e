#include "pdfgraph/ir/convert.hpp"

#include "pdfgraph/pdf/stream_decode.hpp"

namespace pdfgraph::ir {
namespace {

using pdf::PdfValue;

enum class AtomicKind { Num, Str, Name, Ref, Bool, Null, Composite };

AtomicKind atomic_kind(const PdfValue& v) {
  if (v.is<pdf::Numeric>()) return AtomicKind::Num;
  if (v.is<pdf::LiteralString>() || v.is<pdf::HexString>()) return AtomicKind::Str;
  if (v.is<pdf::Name>()) return AtomicKind::Name;
  if (v.is<pdf::Reference>()) return AtomicKind::Ref;
  if (v.is<pdf::Boolean>()) return AtomicKind::Bool;
  if (v.is<pdf::Null>()) return AtomicKind::Null;
  return AtomicKind::Composite;
}

// Inline rendering used inside list values; nulls print as "null" here so
// the element count stays visible.
std::string render_inline(const PdfValue& v);

std::string render_list(const std::vector<PdfValue>& elements) {
  std::string out = "[";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ",";
    out += render_inline(elements[i]);
  }
  out += "]";
  return out;
}

std::string render_inline(const PdfValue& v) {
  if (const auto* n = v.get_if<pdf::Numeric>()) return n->text;
  if (const auto* s = v.get_if<pdf::LiteralString>()) return "(" + escape_bytes(s->decoded) + ")";
  if (const auto* h = v.get_if<pdf::HexString>()) return "<" + h->raw + ">";
  if (const auto* nm = v.get_if<pdf::Name>()) return nm->text;
  if (const auto* b = v.get_if<pdf::Boolean>()) return b->value ? "true" : "false";
  if (v.is<pdf::Null>()) return "null";
  if (const auto* r = v.get_if<pdf::Reference>()) return r->target.str();
  if (const auto* arr = v.get_if<pdf::Array>()) return render_list(arr->elements);
  if (const auto* dict = v.get_if<pdf::Dictionary>()) {
    std::string out = "<<";
    bool first = true;
    for (const auto& [k, val] : dict->entries) {
      if (!first) out += " ";
      first = false;
      out += k.text + " " + render_inline(val);
    }
    out += ">>";
    return out;
  }
  return "";  // streams cannot appear inside values
}

// Atomic value text at entry level; nulls render blank here.
std::string render_atomic(const PdfValue& v) {
  if (v.is<pdf::Null>()) return "";
  return render_inline(v);
}

void convert_pair_into(ObjectId index, const std::string& key_path, const PdfValue& value,
                       std::vector<IrEntry>& out) {
  if (const auto* arr = value.get_if<pdf::Array>()) {
    out.push_back(IrEntry{index, key_path, classify_array(arr->elements),
                          render_list(arr->elements)});
    return;
  }
  if (const auto* dict = value.get_if<pdf::Dictionary>()) {
    out.push_back(IrEntry{index, key_path, VType::Dict, ""});
    for (const auto& [k, v] : dict->entries)
      convert_pair_into(index, key_path + k.text, v, out);
    return;
  }
  if (const auto* stream = value.get_if<pdf::Stream>()) {
    // Streams below the object root do not occur in well-formed PDFs;
    // keep the dictionary part so nothing is silently dropped.
    out.push_back(IrEntry{index, key_path, VType::Dict, ""});
    for (const auto& [k, v] : stream->dict.entries)
      convert_pair_into(index, key_path + k.text, v, out);
    return;
  }
  VType t = VType::Null;
  switch (atomic_kind(value)) {
    case AtomicKind::Num: t = VType::Num; break;
    case AtomicKind::Str: t = VType::Str; break;
    case AtomicKind::Name: t = VType::Name; break;
    case AtomicKind::Ref: t = VType::Ref; break;
    case AtomicKind::Bool: t = VType::Bool; break;
    case AtomicKind::Null: t = VType::Null; break;
    case AtomicKind::Composite: t = VType::Null; break;
  }
  out.push_back(IrEntry{index, key_path, t, render_atomic(value)});
}

}  // namespace

VType classify_array(const std::vector<PdfValue>& elements) {
  if (elements.empty()) return VType::MixList;
  const AtomicKind first = atomic_kind(elements.front());
  if (first == AtomicKind::Null || first == AtomicKind::Composite) return VType::MixList;
  for (const auto& e : elements)
    if (atomic_kind(e) != first) return VType::MixList;
  switch (first) {
    case AtomicKind::Num: return VType::NumList;
    case AtomicKind::Str: return VType::StrList;
    case AtomicKind::Name: return VType::NameList;
    case AtomicKind::Ref: return VType::RefList;
    case AtomicKind::Bool: return VType::BoolList;
    default: return VType::MixList;
  }
}

std::vector<IrEntry> convert_pair(ObjectId index, const std::string& key_path,
                                  const PdfValue& value) {
  std::vector<IrEntry> out;
  convert_pair_into(index, key_path, value, out);
  return out;
}

std::pair<std::vector<IrEntry>, std::optional<Bytes>> convert_object(ObjectId index,
                                                                     const PdfValue& value) {
  std::vector<IrEntry> entries;
  if (const auto* stream = value.get_if<pdf::Stream>()) {
    entries.push_back(IrEntry{index, "", VType::Stream, ""});
    for (const auto& [k, v] : stream->dict.entries)
      convert_pair_into(index, k.text, v, entries);
    return {std::move(entries), pdf::decode_stream(*stream).data};
  }
  if (const auto* dict = value.get_if<pdf::Dictionary>()) {
    for (const auto& [k, v] : dict->entries) convert_pair_into(index, k.text, v, entries);
    return {std::move(entries), std::nullopt};
  }
  if (const auto* arr = value.get_if<pdf::Array>()) {
    entries.push_back(IrEntry{index, "", classify_array(arr->elements),
                              render_list(arr->elements)});
    return {std::move(entries), std::nullopt};
  }
  // Bare atomic object.
  std::vector<IrEntry> single = convert_pair(index, "", value);
  return {std::move(single), std::nullopt};
}

IrProgram convert_document(const pdf::RawDocument& doc) {
  IrProgram program;
  for (const auto& [id, value] : doc.objects) {
    auto [entries, blob] = convert_object(id, value);
    if (blob) program.stream_blobs[id] = std::move(*blob);
    program.entries[id] = std::move(entries);
  }
  return program;
}

}  // namespace pdfgraph::ir
