#include "pdfgraph/pdf/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "pdfgraph/pdf/lexer.hpp"

namespace pdfgraph::pdf {
namespace {

constexpr int kMaxRepairAttempts = 4;

enum class ValueContext { TopLevel, ArrayElement, DictValue };

struct Header {
  ObjectId id;
  std::size_t begin = 0;       // offset of the object number
  std::size_t body_start = 0;  // offset just past the "obj" keyword
};

bool boundary_before(std::string_view buf, std::size_t pos) {
  if (pos == 0) return true;
  const auto c = static_cast<unsigned char>(buf[pos - 1]);
  return is_pdf_whitespace(c) || is_pdf_delimiter(c);
}

bool boundary_after(std::string_view buf, std::size_t pos) {
  if (pos >= buf.size()) return true;
  const auto c = static_cast<unsigned char>(buf[pos]);
  return is_pdf_whitespace(c) || is_pdf_delimiter(c);
}

std::vector<Header> scan_headers(std::string_view bytes) {
  std::vector<Header> out;
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    if (!std::isdigit(static_cast<unsigned char>(bytes[i])) || !boundary_before(bytes, i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && std::isdigit(static_cast<unsigned char>(bytes[j]))) ++j;
    std::size_t k = j;
    while (k < n && is_pdf_whitespace(static_cast<unsigned char>(bytes[k]))) ++k;
    if (k == j || k >= n || !std::isdigit(static_cast<unsigned char>(bytes[k]))) {
      i = j;
      continue;
    }
    std::size_t m = k;
    while (m < n && std::isdigit(static_cast<unsigned char>(bytes[m]))) ++m;
    std::size_t w = m;
    while (w < n && is_pdf_whitespace(static_cast<unsigned char>(bytes[w]))) ++w;
    if (w == m || bytes.compare(w, 3, "obj") != 0 || !boundary_after(bytes, w + 3)) {
      i = j;
      continue;
    }
    const auto num = parse_uint(bytes.substr(i, j - i));
    const auto ver = parse_uint(bytes.substr(k, m - k));
    if (!num || !ver) {
      i = j;
      continue;
    }
    out.push_back(Header{ObjectId{static_cast<std::uint32_t>(*num),
                                  static_cast<std::uint32_t>(*ver)},
                         i, w + 3});
    i = w + 3;
  }
  return out;
}

std::size_t find_keyword(std::string_view buf, std::string_view kw, std::size_t from) {
  std::size_t pos = from;
  while ((pos = buf.find(kw, pos)) != std::string_view::npos) {
    if (boundary_before(buf, pos) && boundary_after(buf, pos + kw.size())) return pos;
    ++pos;
  }
  return std::string_view::npos;
}

std::size_t rfind_keyword(std::string_view buf, std::string_view kw) {
  std::size_t best = std::string_view::npos;
  std::size_t pos = 0;
  while ((pos = buf.find(kw, pos)) != std::string_view::npos) {
    if (boundary_before(buf, pos) && boundary_after(buf, pos + kw.size())) best = pos;
    ++pos;
  }
  return best;
}

// Recursive-descent value parser over a Scanner. Inline repairs (missing
// dictionary values, unparseable tokens) are reported through events;
// unterminated constructs throw MalformedValue carrying the open stack.
class ValueParser {
public:
  ValueParser(Scanner& sc, std::vector<RepairEvent>* events, std::optional<ObjectId> owner)
      : sc_(sc), events_(events), owner_(owner) {}

  PdfValue parse(ValueContext ctx) { return parse_value_at(ctx); }

private:
  Scanner& sc_;
  std::vector<RepairEvent>* events_;
  std::optional<ObjectId> owner_;
  std::vector<OpenConstruct> open_;

  [[noreturn]] void fail(std::size_t offset, std::string what) {
    throw MalformedValue(offset, open_, std::move(what));
  }

  [[noreturn]] void fail_interrupted(std::size_t keyword_pos, std::string what) {
    throw MalformedValue(keyword_pos, open_, std::move(what), keyword_pos);
  }

  void emit(RepairCode code, std::size_t offset, std::string desc) {
    if (events_) events_->push_back(RepairEvent{code, owner_, offset, std::move(desc)});
  }

  PdfValue parse_value_at(ValueContext ctx) {
    sc_.skip_whitespace_and_comments();
    if (sc_.eof()) fail(sc_.pos(), "value expected at end of input");
    const int c = sc_.peek();
    switch (c) {
      case '(': return parse_literal_string();
      case '<':
        if (sc_.peek(1) == '<') return parse_dictionary(ctx == ValueContext::TopLevel);
        return parse_hex_string();
      case '/': return PdfValue(parse_name());
      case '[': return parse_array();
      default: break;
    }
    if (std::isdigit(c) || c == '+' || c == '-' || c == '.') return parse_number_or_reference();
    return parse_keyword_value(ctx);
  }

  Name parse_name() {
    sc_.get();  // '/'
    std::string text = "/";
    text += sc_.read_token();  // #xx sequences kept verbatim
    return Name{std::move(text)};
  }

  PdfValue parse_literal_string() {
    const std::size_t start = sc_.pos();
    sc_.get();  // '('
    open_.push_back(OpenConstruct::LiteralString);
    LiteralString s;
    int depth = 1;
    while (true) {
      if (sc_.eof()) fail(start, "unterminated literal string");
      const int c = sc_.get();
      if (c == '\\') {
        s.raw.push_back('\\');
        if (sc_.eof()) fail(start, "unterminated literal string");
        const int e = sc_.get();
        s.raw.push_back(static_cast<char>(e));
        switch (e) {
          case 'n': s.decoded.push_back('\n'); break;
          case 'r': s.decoded.push_back('\r'); break;
          case 't': s.decoded.push_back('\t'); break;
          case 'b': s.decoded.push_back('\b'); break;
          case 'f': s.decoded.push_back('\f'); break;
          case '(': s.decoded.push_back('('); break;
          case ')': s.decoded.push_back(')'); break;
          case '\\': s.decoded.push_back('\\'); break;
          case '\r':
            if (sc_.peek() == '\n') { s.raw.push_back('\n'); sc_.get(); }
            break;  // line continuation
          case '\n': break;
          default:
            if (e >= '0' && e <= '7') {
              int code = e - '0';
              for (int k = 0; k < 2 && sc_.peek() >= '0' && sc_.peek() <= '7'; ++k) {
                const int d = sc_.get();
                s.raw.push_back(static_cast<char>(d));
                code = code * 8 + (d - '0');
              }
              s.decoded.push_back(static_cast<char>(code & 0xff));
            } else {
              s.decoded.push_back(static_cast<char>(e));  // unknown escape passes through
            }
        }
        continue;
      }
      if (c == '(') {
        ++depth;
        s.raw.push_back('(');
        s.decoded.push_back('(');
        continue;
      }
      if (c == ')') {
        if (--depth == 0) break;
        s.raw.push_back(')');
        s.decoded.push_back(')');
        continue;
      }
      s.raw.push_back(static_cast<char>(c));
      if (c == '\r') {
        if (sc_.peek() == '\n') { s.raw.push_back('\n'); sc_.get(); }
        s.decoded.push_back('\n');
      } else {
        s.decoded.push_back(static_cast<char>(c));
      }
    }
    open_.pop_back();
    return PdfValue(std::move(s));
  }

  PdfValue parse_hex_string() {
    const std::size_t start = sc_.pos();
    sc_.get();  // '<'
    open_.push_back(OpenConstruct::HexString);
    HexString s;
    while (true) {
      if (sc_.eof()) fail(start, "unterminated hex string");
      const int c = sc_.get();
      if (c == '>') break;
      s.raw.push_back(static_cast<char>(c));
    }
    open_.pop_back();
    int hi = -1;
    for (char rc : s.raw) {
      const int d = std::isdigit(static_cast<unsigned char>(rc)) ? rc - '0'
                    : (rc >= 'a' && rc <= 'f')                   ? rc - 'a' + 10
                    : (rc >= 'A' && rc <= 'F')                   ? rc - 'A' + 10
                                                                 : -1;
      if (d < 0) continue;
      if (hi < 0) {
        hi = d;
      } else {
        s.decoded.push_back(static_cast<char>(hi * 16 + d));
        hi = -1;
      }
    }
    if (hi >= 0) s.decoded.push_back(static_cast<char>(hi * 16));  // odd count pads 0
    return PdfValue(std::move(s));
  }

  PdfValue parse_array() {
    const std::size_t start = sc_.pos();
    sc_.get();  // '['
    open_.push_back(OpenConstruct::Array);
    Array arr;
    while (true) {
      sc_.skip_whitespace_and_comments();
      if (sc_.eof()) fail(start, "unterminated array");
      const int c = sc_.peek();
      if (c == ']') {
        sc_.get();
        break;
      }
      if (c == '(' || c == '<' || c == '/' || c == '[' || std::isdigit(c) || c == '+' ||
          c == '-' || c == '.') {
        arr.elements.push_back(parse_value_at(ValueContext::ArrayElement));
        continue;
      }
      // Bare keyword or stray delimiter.
      const std::string_view tok = sc_.token_here();
      if (tok == "true") { sc_.accept_keyword("true"); arr.elements.push_back(Boolean{true}); continue; }
      if (tok == "false") { sc_.accept_keyword("false"); arr.elements.push_back(Boolean{false}); continue; }
      if (tok == "null") { sc_.accept_keyword("null"); arr.elements.push_back(Null{}); continue; }
      if (tok == "endobj" || tok == "endstream") fail_interrupted(sc_.pos(), "array interrupted by keyword");
      if (!tok.empty()) {
        sc_.seek(sc_.pos() + tok.size());  // skip foreign token
      } else {
        sc_.get();  // skip stray delimiter byte
      }
    }
    open_.pop_back();
    return PdfValue(std::move(arr));
  }

  PdfValue parse_dictionary(bool allow_stream) {
    const std::size_t start = sc_.pos();
    sc_.get();
    sc_.get();  // '<<'
    open_.push_back(OpenConstruct::Dictionary);
    Dictionary dict;
    while (true) {
      sc_.skip_whitespace_and_comments();
      if (sc_.eof()) fail(start, "unterminated dictionary");
      if (sc_.peek() == '>' && sc_.peek(1) == '>') {
        sc_.get();
        sc_.get();
        break;
      }
      if (sc_.peek() != '/') {
        const std::string_view tok = sc_.token_here();
        if (tok == "endobj" || tok == "endstream" || tok == "stream")
          fail_interrupted(sc_.pos(), "dictionary interrupted by keyword");
        if (!tok.empty()) {
          sc_.seek(sc_.pos() + tok.size());
        } else {
          sc_.get();
        }
        continue;
      }
      Name key = parse_name();
      sc_.skip_whitespace_and_comments();
      if (sc_.eof()) fail(start, "dictionary truncated after key " + key.text);
      if (sc_.peek() == '>' && sc_.peek(1) == '>') {
        emit(RepairCode::E3, sc_.pos(), "missing value for key " + key.text + " filled with null");
        dict.entries.emplace_back(std::move(key), PdfValue(Null{}));
        continue;
      }
      dict.entries.emplace_back(std::move(key), parse_dict_value(key_offset()));
    }
    open_.pop_back();

    if (allow_stream) {
      const std::size_t before = sc_.pos();
      sc_.skip_whitespace_and_comments();
      if (!sc_.eof() && sc_.accept_keyword("stream")) return parse_stream_data(std::move(dict));
      sc_.seek(before);
    }
    return PdfValue(std::move(dict));
  }

  std::size_t key_offset() const { return sc_.pos(); }

  PdfValue parse_dict_value(std::size_t offset) {
    const int c = sc_.peek();
    if (c == '(' || c == '<' || c == '/' || c == '[' || std::isdigit(c) || c == '+' ||
        c == '-' || c == '.') {
      return parse_value_at(ValueContext::DictValue);
    }
    const std::string_view tok = sc_.token_here();
    if (tok == "true") { sc_.accept_keyword("true"); return PdfValue(Boolean{true}); }
    if (tok == "false") { sc_.accept_keyword("false"); return PdfValue(Boolean{false}); }
    if (tok == "null") { sc_.accept_keyword("null"); return PdfValue(Null{}); }
    if (tok == "endobj" || tok == "endstream" || tok == "stream")
      fail_interrupted(sc_.pos(), "dictionary interrupted by keyword");
    if (!tok.empty()) {
      emit(RepairCode::E3, offset, "unparseable value replaced with null");
      sc_.seek(sc_.pos() + tok.size());
      return PdfValue(Null{});
    }
    emit(RepairCode::E3, offset, "missing value filled with null");
    return PdfValue(Null{});  // stray delimiter stays for the key loop
  }

  PdfValue parse_number_or_reference() {
    const std::size_t save = sc_.pos();
    const std::string first = sc_.read_token();
    if (!is_numeric_token(first)) {
      (void)save;
      return PdfValue(Null{});  // lone sign or similar junk token
    }
    // "N M R" lookahead for nonnegative integers.
    if (first.find_first_of("+-.") == std::string::npos) {
      const std::size_t after_first = sc_.pos();
      sc_.skip_whitespace_and_comments();
      const std::string second = sc_.read_token();
      if (!second.empty() && second.find_first_of("+-.") == std::string::npos &&
          is_numeric_token(second)) {
        sc_.skip_whitespace_and_comments();
        if (sc_.accept_keyword("R")) {
          const auto num = parse_uint(first);
          const auto ver = parse_uint(second);
          if (num && ver) {
            return PdfValue(Reference{ObjectId{static_cast<std::uint32_t>(*num),
                                               static_cast<std::uint32_t>(*ver)}});
          }
        }
      }
      sc_.seek(after_first);
    }
    Numeric n;
    n.text = first;
    n.value = std::strtod(first.c_str(), nullptr);
    return PdfValue(std::move(n));
  }

  PdfValue parse_keyword_value(ValueContext ctx) {
    const std::size_t start = sc_.pos();
    const std::string_view tok = sc_.token_here();
    if (tok == "true") { sc_.accept_keyword("true"); return PdfValue(Boolean{true}); }
    if (tok == "false") { sc_.accept_keyword("false"); return PdfValue(Boolean{false}); }
    if (tok == "null") { sc_.accept_keyword("null"); return PdfValue(Null{}); }
    if (ctx == ValueContext::TopLevel) {
      // Garbage object body: keep the cursor on object keywords so the
      // caller can still consume them; otherwise swallow one token.
      if (tok != "endobj" && tok != "endstream") {
        if (!tok.empty()) {
          sc_.seek(start + tok.size());
        } else if (!sc_.eof()) {
          sc_.get();
        }
      }
      return PdfValue(Null{});
    }
    fail(start, "unexpected token '" + std::string(tok) + "'");
  }

  PdfValue parse_stream_data(Dictionary dict) {
    const std::size_t kw_end = sc_.pos();
    // Exactly one EOL may follow the keyword.
    if (sc_.peek() == '\r') sc_.get();
    if (sc_.peek() == '\n') sc_.get();
    const std::size_t data_start = sc_.pos();

    Stream stream;
    stream.dict = std::move(dict);

    std::optional<std::size_t> declared;
    bool length_missing = true;
    if (const PdfValue* len = stream.dict.find("/Length")) {
      length_missing = false;
      if (const auto* num = len->get_if<Numeric>()) {
        if (num->value >= 0 && num->text.find('.') == std::string::npos)
          declared = static_cast<std::size_t>(num->value);
      }
      // Reference-valued or malformed /Length falls through to the scan.
    }

    const std::string_view file = sc_.file_bytes();
    const std::size_t hard_end = sc_.can_read_past_limit() ? file.size() : sc_.buffer_limit();

    if (declared && data_start + *declared <= hard_end) {
      // Validate that endstream follows the declared extent.
      Scanner probe(file, data_start + *declared, hard_end, {});
      probe.skip_whitespace_and_comments();
      if (probe.accept_keyword("endstream")) {
        stream.data = Bytes(file.substr(data_start, *declared));
        sc_.seek(probe.pos());
        finalize_stream_length(stream, false);
        return PdfValue(std::move(stream));
      }
    }

    // E7 path: measure to the endstream keyword, or to the end of the span.
    std::size_t search = data_start;
    std::size_t found = std::string_view::npos;
    while (search < hard_end) {
      const std::size_t p = file.find("endstream", search);
      if (p == std::string_view::npos || p >= hard_end) break;
      if (boundary_after(file, p + 9)) {
        found = p;
        break;
      }
      search = p + 1;
    }
    std::size_t data_end;
    if (found != std::string_view::npos) {
      data_end = found;
      // One EOL before the keyword belongs to the framing, not the data.
      if (data_end > data_start && file[data_end - 1] == '\n') --data_end;
      if (data_end > data_start && file[data_end - 1] == '\r') --data_end;
      stream.data = Bytes(file.substr(data_start, data_end - data_start));
      sc_.seek(found + 9);
    } else {
      const std::size_t limit = std::min(hard_end, sc_.logical_end());
      data_end = std::max(data_start, limit);
      stream.data = Bytes(file.substr(data_start, data_end - data_start));
      sc_.seek(data_end);
    }
    stream.length_from_scan = true;
    if (length_missing) {
      emit(RepairCode::E7, kw_end,
           "stream missing /Length; measured " + std::to_string(stream.data.size()) +
               " bytes to endstream");
    } else if (declared) {
      emit(RepairCode::E7, kw_end,
           "stream /Length inconsistent; measured " + std::to_string(stream.data.size()) +
               " bytes to endstream");
    }
    finalize_stream_length(stream, true);
    return PdfValue(std::move(stream));
  }

  // Keeps /Length consistent with the measured payload so repaired objects
  // serialize and re-parse cleanly.
  void finalize_stream_length(Stream& stream, bool measured) {
    const std::string want = std::to_string(stream.data.size());
    PdfValue* existing = nullptr;
    for (auto& [k, v] : stream.dict.entries)
      if (k.text == "/Length") existing = &v;
    if (existing) {
      if (const auto* num = existing->get_if<Numeric>();
          num && !measured && static_cast<std::size_t>(num->value) == stream.data.size()) {
        return;  // accurate source text kept verbatim
      }
      *existing = PdfValue(Numeric{want, static_cast<double>(stream.data.size())});
    } else {
      stream.dict.entries.emplace_back(Name{"/Length"},
                                       PdfValue(Numeric{want, static_cast<double>(stream.data.size())}));
    }
  }
};

std::string completion_suffix(const std::vector<OpenConstruct>& open) {
  std::string out;
  for (auto it = open.rbegin(); it != open.rend(); ++it) {
    switch (*it) {
      case OpenConstruct::LiteralString: out += ")"; break;
      case OpenConstruct::HexString: out += ">"; break;
      case OpenConstruct::Array: out += "]"; break;
      case OpenConstruct::Dictionary: out += ">>"; break;
    }
  }
  return out;
}

struct ObjectParseOutcome {
  PdfValue value;
  std::size_t end = 0;  // file offset one past the consumed extent
  std::vector<RepairEvent> events;
};

// Parses one object body with the bounded repair loop: on an unterminated
// construct the open stack is converted to a completion suffix (E1 when the
// innermost construct is a string, E3 otherwise) and the parse retried with
// the suffix as a virtual tail. A keyword interrupt additionally pulls the
// span limit back to the keyword so the retry terminates there.
ObjectParseOutcome parse_object_body(std::string_view bytes, std::size_t body_start,
                                     std::size_t limit, std::optional<ObjectId> owner) {
  ObjectParseOutcome out;
  std::string tail;
  std::size_t effective_limit = std::max(limit, body_start);
  std::vector<RepairEvent> completion_events;
  for (int attempt = 0; attempt < kMaxRepairAttempts; ++attempt) {
    std::vector<RepairEvent> inline_events;
    Scanner sc(bytes, body_start, effective_limit, tail);
    ValueParser vp(sc, &inline_events, owner);
    try {
      sc.skip_whitespace_and_comments();
      PdfValue value(Null{});
      if (!sc.eof() && !sc.accept_keyword("endobj")) {
        value = vp.parse(ValueContext::TopLevel);
        sc.skip_whitespace_and_comments();
        sc.accept_keyword("endobj");
      }
      out.value = std::move(value);
      out.end = tail.empty() ? sc.pos() : std::min(sc.pos(), effective_limit);
      out.events = std::move(completion_events);
      out.events.insert(out.events.end(), inline_events.begin(), inline_events.end());
      return out;
    } catch (const MalformedValue& mv) {
      const std::string suffix = completion_suffix(mv.open_stack());
      if (suffix.empty()) {
        // Interrupting keyword with nothing open: treat the body as null.
        out.value = PdfValue(Null{});
        out.end = std::min(mv.offset(), effective_limit);
        out.events = std::move(completion_events);
        return out;
      }
      const bool string_rooted = !mv.open_stack().empty() &&
                                 (mv.open_stack().back() == OpenConstruct::LiteralString ||
                                  mv.open_stack().back() == OpenConstruct::HexString);
      completion_events.push_back(RepairEvent{
          string_rooted ? RepairCode::E1 : RepairCode::E3, owner,
          std::min(mv.offset(), bytes.size()),
          string_rooted
              ? "string overflow closed with '" + suffix + "' and endobj"
              : "structure truncated; completed with '" + suffix + "' and endobj"});
      if (mv.truncate_hint())
        effective_limit = std::max(body_start, std::min(effective_limit, *mv.truncate_hint()));
      tail += suffix;
    }
  }
  out.value = PdfValue(Null{});
  out.end = effective_limit;
  out.events = std::move(completion_events);
  return out;
}

void collect_references(const PdfValue& value, std::vector<ObjectId>& out) {
  if (const auto* ref = value.get_if<Reference>()) {
    out.push_back(ref->target);
  } else if (const auto* arr = value.get_if<Array>()) {
    for (const auto& e : arr->elements) collect_references(e, out);
  } else if (const auto* dict = value.get_if<Dictionary>()) {
    for (const auto& [k, v] : dict->entries) collect_references(v, out);
  } else if (const auto* stream = value.get_if<Stream>()) {
    for (const auto& [k, v] : stream->dict.entries) collect_references(v, out);
  }
}

void emit_value_text(const PdfValue& value, Bytes& out);

void emit_dict_text(const Dictionary& dict, Bytes& out) {
  out += "<<";
  for (const auto& [k, v] : dict.entries) {
    out += " ";
    out += k.text;
    out += " ";
    emit_value_text(v, out);
  }
  out += " >>";
}

void emit_value_text(const PdfValue& value, Bytes& out) {
  if (value.is<Null>()) {
    out += "null";
  } else if (const auto* b = value.get_if<Boolean>()) {
    out += b->value ? "true" : "false";
  } else if (const auto* n = value.get_if<Numeric>()) {
    out += n->text;
  } else if (const auto* s = value.get_if<LiteralString>()) {
    out += "(";
    for (char c : s->decoded) {
      switch (c) {
        case '\\': out += "\\\\"; break;
        case '(': out += "\\("; break;
        case ')': out += "\\)"; break;
        case '\r': out += "\\r"; break;
        case '\n': out += "\\n"; break;
        default: out.push_back(c);
      }
    }
    out += ")";
  } else if (const auto* h = value.get_if<HexString>()) {
    out += "<";
    out += h->raw;
    out += ">";
  } else if (const auto* nm = value.get_if<Name>()) {
    out += nm->text;
  } else if (const auto* r = value.get_if<Reference>()) {
    out += std::to_string(r->target.number) + " " + std::to_string(r->target.version) + " R";
  } else if (const auto* arr = value.get_if<Array>()) {
    out += "[";
    for (std::size_t i = 0; i < arr->elements.size(); ++i) {
      out += i ? " " : " ";
      emit_value_text(arr->elements[i], out);
    }
    out += " ]";
  } else if (const auto* dict = value.get_if<Dictionary>()) {
    emit_dict_text(*dict, out);
  } else if (const auto* stream = value.get_if<Stream>()) {
    emit_dict_text(stream->dict, out);
    out += "\nstream\n";
    out += stream->data;
    out += "\nendstream";
  }
}

}  // namespace

std::string_view repair_code_name(RepairCode code) {
  switch (code) {
    case RepairCode::E1: return "E1";
    case RepairCode::E2: return "E2";
    case RepairCode::E3: return "E3";
    case RepairCode::E4: return "E4";
    case RepairCode::E5: return "E5";
    case RepairCode::E6: return "E6";
    case RepairCode::E7: return "E7";
    case RepairCode::E8: return "E8";
  }
  return "E?";
}

std::string RepairEvent::report_line() const {
  std::string line(repair_code_name(code));
  line += "\t";
  line += object ? object->str() : "-";
  line += "\t";
  line += std::to_string(byte_offset);
  line += "\t";
  line += description;
  return line;
}

std::vector<ScanHit> scan_objects(std::string_view bytes) {
  const auto headers = scan_headers(bytes);
  std::vector<ScanHit> hits;
  hits.reserve(headers.size());
  for (std::size_t i = 0; i < headers.size(); ++i) {
    const std::size_t next_begin = i + 1 < headers.size() ? headers[i + 1].begin : bytes.size();
    std::size_t end = next_begin;
    const std::size_t e = find_keyword(bytes, "endobj", headers[i].body_start);
    if (e != std::string_view::npos && e < next_begin) end = e + 6;
    hits.push_back(ScanHit{headers[i].id, headers[i].begin, end});
  }
  return hits;
}

std::pair<PdfValue, std::size_t> parse_value(std::string_view bytes, std::size_t cursor,
                                             std::vector<RepairEvent>* events) {
  Scanner sc(bytes, cursor, bytes.size(), {});
  ValueParser vp(sc, events, std::nullopt);
  PdfValue v = vp.parse(ValueContext::DictValue);
  return {std::move(v), sc.pos()};
}

std::pair<Bytes, std::optional<RepairEvent>> repair_string_overflow(std::string_view object_span) {
  // Locate the value: skip an "N M obj" header when present.
  std::size_t start = 0;
  const auto headers = scan_headers(object_span);
  if (!headers.empty() && headers.front().begin == 0) start = headers.front().body_start;

  Scanner sc(object_span, start, object_span.size(), {});
  ValueParser vp(sc, nullptr, std::nullopt);
  try {
    sc.skip_whitespace_and_comments();
    if (!sc.eof() && !sc.accept_keyword("endobj")) vp.parse(ValueContext::TopLevel);
    return {Bytes(object_span), std::nullopt};
  } catch (const MalformedValue& mv) {
    if (mv.open_stack().empty() || (mv.open_stack().back() != OpenConstruct::LiteralString &&
                                    mv.open_stack().back() != OpenConstruct::HexString)) {
      return {Bytes(object_span), std::nullopt};
    }
    Bytes repaired(object_span);
    repaired += completion_suffix(mv.open_stack());
    if (rfind_keyword(repaired, "endobj") == std::string::npos) repaired += "\nendobj";
    return {std::move(repaired),
            RepairEvent{RepairCode::E1, headers.empty() ? std::nullopt
                                                         : std::optional<ObjectId>(headers.front().id),
                        mv.offset(), "string overflow closed"}};
  }
}

std::pair<PdfValue, std::vector<RepairEvent>> repair_incomplete_pairs(std::string_view dict_span) {
  ObjectParseOutcome out = parse_object_body(dict_span, 0, dict_span.size(), std::nullopt);
  return {std::move(out.value), std::move(out.events)};
}

std::optional<RepairEvent> synthesize_missing_object(RawDocument& doc, ObjectId ref,
                                                     std::size_t byte_offset) {
  if (doc.objects.contains(ref)) return std::nullopt;
  doc.objects.emplace(ref, PdfValue(Null{}));
  RepairEvent ev{RepairCode::E2, ref, byte_offset,
                 "dangling reference; object synthesized as null"};
  doc.diagnostics.push_back(ev);
  return ev;
}

void apply_structural_fallbacks(std::string_view bytes, RawDocument& doc) {
  // E4: header version.
  const std::size_t probe = std::min<std::size_t>(bytes.size(), 1024);
  const std::size_t hdr = bytes.substr(0, probe).find("%PDF-");
  bool version_ok = false;
  if (hdr != std::string_view::npos) {
    std::size_t v = hdr + 5;
    std::string version;
    while (v < bytes.size() && (std::isdigit(static_cast<unsigned char>(bytes[v])) || bytes[v] == '.'))
      version.push_back(bytes[v++]);
    if (!version.empty() && version.find('.') != std::string::npos) {
      doc.header_version = version;
      version_ok = true;
    }
  }
  if (!version_ok) {
    doc.diagnostics.push_back(RepairEvent{RepairCode::E4, std::nullopt, 0,
                                          "missing or malformed %PDF header; version ignored"});
  }

  // E6: %%EOF marker.
  if (bytes.rfind("%%EOF") == std::string_view::npos) {
    doc.diagnostics.push_back(RepairEvent{RepairCode::E6, std::nullopt, bytes.size(),
                                          "missing %%EOF; trailer located by keyword"});
  }

  // Trailer: last "trailer" keyword, else the startxref target's dictionary.
  std::optional<std::size_t> trailer_pos;
  const std::size_t t = rfind_keyword(bytes, "trailer");
  if (t != std::string_view::npos) {
    std::vector<RepairEvent> scratch;
    Scanner sc(bytes, t + 7, bytes.size(), {});
    ValueParser vp(sc, &scratch, std::nullopt);
    try {
      sc.skip_whitespace_and_comments();
      if (!sc.eof() && sc.peek() == '<' && sc.peek(1) == '<') {
        PdfValue v = vp.parse(ValueContext::DictValue);
        if (const auto* dict = v.get_if<Dictionary>()) {
          doc.trailer = *dict;
          trailer_pos = t;
        }
      }
    } catch (const MalformedValue&) {
      // Opportunistic only; the linear scan is the object authority.
    }
  }
  if (doc.trailer) {
    if (!doc.trailer->find("/Root")) {
      doc.diagnostics.push_back(RepairEvent{RepairCode::E5, std::nullopt,
                                            trailer_pos.value_or(bytes.size()),
                                            "trailer missing /Root; body linearly scanned"});
    }
    if (doc.trailer->find("/Encrypt")) doc.encrypted = true;
  }

  // E8: validate a classic xref table when one exists.
  const std::size_t x = rfind_keyword(bytes, "xref");
  if (x == std::string_view::npos) return;
  Scanner sc(bytes, x + 4, bytes.size(), {});
  bool broken = false;
  std::string why;
  while (!broken) {
    sc.skip_whitespace_and_comments();
    if (sc.eof()) break;
    const std::string_view tok = sc.token_here();
    if (tok == "trailer" || tok == "startxref") break;
    const std::string start_tok = sc.read_token();
    sc.skip_whitespace_and_comments();
    const std::string count_tok = sc.read_token();
    const auto start = parse_uint(start_tok);
    const auto count = parse_uint(count_tok);
    if (!start || !count) {
      broken = true;
      why = "xref subsection header malformed";
      break;
    }
    for (unsigned long i = 0; i < *count && !broken; ++i) {
      sc.skip_whitespace_and_comments();
      const std::string off_tok = sc.read_token();
      sc.skip_whitespace_and_comments();
      const std::string gen_tok = sc.read_token();
      sc.skip_whitespace_and_comments();
      const std::string kind = sc.read_token();
      const auto off = parse_uint(off_tok);
      const auto gen = parse_uint(gen_tok);
      if (!off || !gen || (kind != "n" && kind != "f")) {
        broken = true;
        why = "xref entry malformed";
        break;
      }
      if (kind == "n") {
        // The offset must point at the header of the claimed object number.
        if (*off >= bytes.size()) {
          broken = true;
          why = "xref offset beyond end of file";
          break;
        }
        Scanner at(bytes, *off, bytes.size(), {});
        at.skip_whitespace_and_comments();
        const std::string num_tok = at.read_token();
        const auto num = parse_uint(num_tok);
        if (!num || *num != *start + i) {
          broken = true;
          why = "xref offset does not match object " + std::to_string(*start + i);
          break;
        }
      }
    }
  }
  if (broken) {
    doc.diagnostics.push_back(RepairEvent{RepairCode::E8, std::nullopt, x,
                                          why + "; references rebuilt from linear scan"});
  }
}

RawDocument parse_document(std::string_view bytes) {
  RawDocument doc;
  const auto headers = scan_headers(bytes);

  std::vector<RepairEvent> object_events;
  std::map<ObjectId, std::size_t> object_origin;  // header offset per surviving object
  std::size_t consumed_end = 0;
  for (std::size_t i = 0; i < headers.size(); ++i) {
    if (headers[i].begin < consumed_end) continue;  // swallowed by a stream payload
    const std::size_t limit = i + 1 < headers.size() ? headers[i + 1].begin : bytes.size();
    ObjectParseOutcome out =
        parse_object_body(bytes, headers[i].body_start, limit, headers[i].id);
    consumed_end = std::max(consumed_end, out.end);
    doc.objects.insert_or_assign(headers[i].id, std::move(out.value));  // last definition wins
    object_origin[headers[i].id] = headers[i].begin;
    for (auto& ev : out.events) object_events.push_back(std::move(ev));
  }
  doc.diagnostics.insert(doc.diagnostics.end(), object_events.begin(), object_events.end());

  // E2 closure over a snapshot of the parsed objects.
  std::vector<std::pair<ObjectId, std::vector<ObjectId>>> refs_by_object;
  for (const auto& [id, value] : doc.objects) {
    std::vector<ObjectId> refs;
    collect_references(value, refs);
    if (!refs.empty()) refs_by_object.emplace_back(id, std::move(refs));
  }
  std::set<ObjectId> synthesized;
  for (const auto& [owner, refs] : refs_by_object) {
    for (const ObjectId& ref : refs) {
      if (doc.objects.contains(ref) || synthesized.contains(ref)) continue;
      synthesized.insert(ref);
      doc.objects.emplace(ref, PdfValue(Null{}));
      const auto origin = object_origin.find(owner);
      doc.diagnostics.push_back(RepairEvent{
          RepairCode::E2, ref, origin == object_origin.end() ? 0 : origin->second,
          "reference " + ref.str() + " from " + owner.str() + " undefined; synthesized as null"});
    }
  }

  apply_structural_fallbacks(bytes, doc);

  std::stable_sort(doc.diagnostics.begin(), doc.diagnostics.end(),
                   [](const RepairEvent& a, const RepairEvent& b) {
                     return a.byte_offset < b.byte_offset;
                   });
  return doc;
}

Bytes RawDocument::serialize_repaired() const {
  Bytes out = "%PDF-" + header_version.value_or("1.7") + "\n";

  std::vector<std::pair<ObjectId, std::size_t>> offsets;
  offsets.reserve(objects.size());
  for (const auto& [id, value] : objects) {
    offsets.emplace_back(id, out.size());
    out += std::to_string(id.number) + " " + std::to_string(id.version) + " obj\n";
    emit_value_text(value, out);
    out += "\nendobj\n";
  }

  const std::size_t xref_pos = out.size();
  out += "xref\n0 1\n0000000000 65535 f \n";
  for (const auto& [id, off] : offsets) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%010zu %05u n \n", off, id.version);
    out += std::to_string(id.number) + " 1\n";
    out += buf;
  }

  // A trailer is only written when a /Root target is known: either the
  // original trailer's or the first catalog-typed object.
  std::optional<ObjectId> root;
  if (trailer) {
    if (const PdfValue* r = trailer->find("/Root")) {
      if (const auto* ref = r->get_if<Reference>()) root = ref->target;
    }
  }
  if (!root) {
    for (const auto& [id, value] : objects) {
      const Dictionary* dict = value.get_if<Dictionary>();
      if (!dict) {
        if (const auto* stream = value.get_if<Stream>()) dict = &stream->dict;
      }
      if (dict) {
        if (const PdfValue* type = dict->find("/Type")) {
          if (const auto* nm = type->get_if<Name>(); nm && nm->text == "/Catalog") {
            root = id;
            break;
          }
        }
      }
    }
  }
  if (root) {
    out += "trailer\n<< /Size " + std::to_string(objects.size() + 1) + " /Root " +
           std::to_string(root->number) + " " + std::to_string(root->version) + " R >>\n";
  }
  out += "startxref\n" + std::to_string(xref_pos) + "\n%%EOF\n";
  return out;
}

}  // namespace pdfgraph::pdf
