#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "pdfgraph/util/bytes.hpp"

namespace pdfgraph::pdf {

// Byte-level scanning helpers shared by the object scanner and the value
// parser. A Scanner views a buffer with a soft limit: structural parsing
// treats the limit as end-of-input, while an optional virtual tail (repair
// completions) logically follows it.
class Scanner {
public:
  Scanner(std::string_view buf, std::size_t begin, std::size_t limit, std::string_view tail)
      : buf_(buf), limit_(limit), tail_(tail), pos_(begin) {}

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

  std::size_t logical_end() const { return limit_ + tail_.size(); }
  bool eof() const { return pos_ >= logical_end(); }

  // Byte at absolute logical position p, or -1 past the end.
  int at(std::size_t p) const {
    if (p < limit_) return static_cast<unsigned char>(buf_[p]);
    const std::size_t t = p - limit_;
    if (t < tail_.size()) return static_cast<unsigned char>(tail_[t]);
    return -1;
  }

  int peek(std::size_t ahead = 0) const { return at(pos_ + ahead); }
  int get() { return at(pos_++); }

  void skip_whitespace_and_comments();

  // Longest run of regular (non-whitespace, non-delimiter) bytes at pos.
  std::string_view token_here() const;

  // Consumes kw if the bytes at pos equal it and the following byte is not
  // a regular character (token boundary).
  bool accept_keyword(std::string_view kw);

  // Reads a regular token and advances past it; empty when at a delimiter.
  std::string read_token();

  // True while the underlying file continues past the soft limit and no
  // repair tail is active; stream payloads may extend there.
  bool can_read_past_limit() const { return tail_.empty(); }
  std::size_t buffer_limit() const { return limit_; }
  std::size_t file_size() const { return buf_.size(); }
  std::string_view file_bytes() const { return buf_; }

private:
  std::string_view buf_;
  std::size_t limit_;
  std::string_view tail_;
  std::size_t pos_;
};

// Parses a nonnegative decimal integer token; nullopt on overflow/mismatch.
std::optional<unsigned long> parse_uint(std::string_view token);

// True if token looks like a PDF numeric ([+-]?digits[.digits] etc).
bool is_numeric_token(std::string_view token);

}  // namespace pdfgraph::pdf
