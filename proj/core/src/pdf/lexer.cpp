#include "pdfgraph/pdf/lexer.hpp"

#include <cctype>
#include <charconv>

namespace pdfgraph::pdf {

void Scanner::skip_whitespace_and_comments() {
  while (!eof()) {
    const int c = peek();
    if (is_pdf_whitespace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (c == '%') {
      // Comment runs to end of line. %PDF / %%EOF markers are handled by the
      // document layer before value parsing, so plain comment skipping is safe.
      while (!eof() && peek() != '\n' && peek() != '\r') ++pos_;
    } else {
      break;
    }
  }
}

std::string_view Scanner::token_here() const {
  std::size_t n = 0;
  while (true) {
    const int c = at(pos_ + n);
    if (c < 0) break;
    const auto u = static_cast<unsigned char>(c);
    if (is_pdf_whitespace(u) || is_pdf_delimiter(u)) break;
    ++n;
  }
  // Tokens never straddle the buffer/tail seam in practice; materialize
  // through buf_ when fully inside it, otherwise rebuild via at().
  if (pos_ + n <= limit_) return std::string_view(buf_.data() + pos_, n);
  if (pos_ >= limit_) return std::string_view(tail_.data() + (pos_ - limit_), n);
  return std::string_view(buf_.data() + pos_, limit_ - pos_);
}

bool Scanner::accept_keyword(std::string_view kw) {
  for (std::size_t i = 0; i < kw.size(); ++i)
    if (at(pos_ + i) != static_cast<unsigned char>(kw[i])) return false;
  const int after = at(pos_ + kw.size());
  if (after >= 0) {
    const auto u = static_cast<unsigned char>(after);
    if (!is_pdf_whitespace(u) && !is_pdf_delimiter(u)) return false;
  }
  pos_ += kw.size();
  return true;
}

std::string Scanner::read_token() {
  std::string out;
  while (!eof()) {
    const auto u = static_cast<unsigned char>(peek());
    if (is_pdf_whitespace(u) || is_pdf_delimiter(u)) break;
    out.push_back(static_cast<char>(get()));
  }
  return out;
}

std::optional<unsigned long> parse_uint(std::string_view token) {
  if (token.empty()) return std::nullopt;
  unsigned long v = 0;
  auto r = std::from_chars(token.data(), token.data() + token.size(), v);
  if (r.ec != std::errc{} || r.ptr != token.data() + token.size()) return std::nullopt;
  return v;
}

bool is_numeric_token(std::string_view token) {
  if (token.empty()) return false;
  std::size_t i = 0;
  if (token[i] == '+' || token[i] == '-') ++i;
  bool digits = false, dot = false;
  for (; i < token.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(token[i]))) {
      digits = true;
    } else if (token[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits || dot;
}

}  // namespace pdfgraph::pdf
