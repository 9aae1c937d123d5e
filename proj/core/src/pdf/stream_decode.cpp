#include "pdfgraph/pdf/stream_decode.hpp"

#include <zlib.h>

#include <array>

namespace pdfgraph::pdf {
namespace {

std::optional<Bytes> inflate_bytes(const Bytes& in) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) return std::nullopt;
  Bytes out;
  std::array<unsigned char, 16384> chunk;
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  int ret = Z_OK;
  do {
    zs.next_out = chunk.data();
    zs.avail_out = static_cast<uInt>(chunk.size());
    ret = inflate(&zs, Z_NO_FLUSH);
    if (ret != Z_OK && ret != Z_STREAM_END) {
      inflateEnd(&zs);
      return std::nullopt;
    }
    out.append(reinterpret_cast<char*>(chunk.data()), chunk.size() - zs.avail_out);
  } while (ret != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
  inflateEnd(&zs);
  if (ret != Z_STREAM_END) return std::nullopt;
  return out;
}

bool filter_is(const PdfValue& filter, std::string_view name) {
  if (const auto* n = filter.get_if<Name>()) return n->text == name;
  if (const auto* arr = filter.get_if<Array>()) {
    if (arr->elements.size() == 1)
      if (const auto* n = arr->elements[0].get_if<Name>()) return n->text == name;
  }
  return false;
}

}  // namespace

DecodedStream decode_stream(const Stream& stream) {
  const PdfValue* filter = stream.dict.find("/Filter");
  if (!filter || filter->is<Null>()) {
    return DecodedStream{stream.data, false, std::nullopt};
  }
  if (filter_is(*filter, "/FlateDecode") || filter_is(*filter, "/Fl")) {
    if (auto inflated = inflate_bytes(stream.data)) {
      return DecodedStream{std::move(*inflated), false, std::nullopt};
    }
    return DecodedStream{stream.data, true, "FlateDecode failed; raw bytes kept"};
  }
  return DecodedStream{stream.data, true, "unsupported filter; raw bytes kept"};
}

}  // namespace pdfgraph::pdf
