#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pdfgraph {

using Bytes = std::string;  // raw byte buffers; may contain NUL

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

// Renders bytes as text: printable ASCII passes through, everything else
// becomes \xHH. Used by IR emission so entries stay one-per-line.
std::string escape_bytes(std::string_view raw);

// Inverse of escape_bytes for the \xHH sequences it produces.
std::string unescape_bytes(std::string_view text);

bool is_pdf_whitespace(unsigned char c);
bool is_pdf_delimiter(unsigned char c);

// Lowercase hex MD5 of a buffer (manifest dedup).
std::string md5_hex(std::string_view data);

}  // namespace pdfgraph
