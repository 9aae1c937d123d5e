#include "pdfgraph/embed/checkpoint.hpp"

#include <cstring>
#include <stdexcept>

#include "pdfgraph/util/bytes.hpp"

namespace pdfgraph::embed {
namespace {

constexpr char kMagic[4] = {'P', 'O', 'V', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& in, std::size_t& pos) {
  if (pos + 4 > in.size()) throw std::runtime_error("checkpoint truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += 4;
  return v;
}

std::uint64_t get_u64(const std::string& in, std::size_t& pos) {
  if (pos + 8 > in.size()) throw std::runtime_error("checkpoint truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += 8;
  return v;
}

std::string get_blob(const std::string& in, std::size_t& pos, std::size_t len) {
  if (pos + len > in.size()) throw std::runtime_error("checkpoint truncated");
  std::string out = in.substr(pos, len);
  pos += len;
  return out;
}

}  // namespace

NamedTensor NamedTensor::from_matrix(const std::string& name, const nn::Matrix& m) {
  NamedTensor t;
  t.name = name;
  t.shape = {static_cast<std::uint64_t>(m.rows()), static_cast<std::uint64_t>(m.cols())};
  t.data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) t.data.push_back(static_cast<float>(m(i, j)));
  return t;
}

nn::Matrix NamedTensor::to_matrix() const {
  if (shape.size() != 2) throw std::runtime_error("tensor " + name + " is not a matrix");
  nn::Matrix m(static_cast<Eigen::Index>(shape[0]), static_cast<Eigen::Index>(shape[1]));
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = static_cast<double>(data[k++]);
  return m;
}

const NamedTensor& Checkpoint::tensor(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return t;
  throw std::runtime_error("checkpoint missing tensor " + name);
}

bool Checkpoint::has_tensor(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return true;
  return false;
}

const std::string& Checkpoint::meta(const std::string& key) const {
  const auto it = metadata.find(key);
  if (it == metadata.end()) throw std::runtime_error("checkpoint missing metadata " + key);
  return it->second;
}

std::string Checkpoint::serialize() const {
  std::string out(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(scheme.size()));
  out += scheme;
  put_u32(out, static_cast<std::uint32_t>(metadata.size()));
  for (const auto& [k, v] : metadata) {
    put_u32(out, static_cast<std::uint32_t>(k.size()));
    out += k;
    put_u32(out, static_cast<std::uint32_t>(v.size()));
    out += v;
  }
  put_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    put_u32(out, static_cast<std::uint32_t>(t.name.size()));
    out += t.name;
    put_u32(out, static_cast<std::uint32_t>(t.shape.size()));
    for (std::uint64_t d : t.shape) put_u64(out, d);
    put_u64(out, static_cast<std::uint64_t>(t.data.size()));
    const std::size_t at = out.size();
    out.resize(at + t.data.size() * sizeof(float));
    std::memcpy(out.data() + at, t.data.data(), t.data.size() * sizeof(float));
  }
  return out;
}

Checkpoint Checkpoint::deserialize(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw std::runtime_error("not a POV1 checkpoint");
  std::size_t pos = 4;
  Checkpoint ckpt;
  ckpt.scheme = get_blob(bytes, pos, get_u32(bytes, pos));
  const std::uint32_t n_meta = get_u32(bytes, pos);
  for (std::uint32_t i = 0; i < n_meta; ++i) {
    std::string k = get_blob(bytes, pos, get_u32(bytes, pos));
    std::string v = get_blob(bytes, pos, get_u32(bytes, pos));
    ckpt.metadata.emplace(std::move(k), std::move(v));
  }
  const std::uint32_t n_tensors = get_u32(bytes, pos);
  for (std::uint32_t i = 0; i < n_tensors; ++i) {
    NamedTensor t;
    t.name = get_blob(bytes, pos, get_u32(bytes, pos));
    const std::uint32_t ndim = get_u32(bytes, pos);
    for (std::uint32_t d = 0; d < ndim; ++d) t.shape.push_back(get_u64(bytes, pos));
    const std::uint64_t count = get_u64(bytes, pos);
    const std::string blob = get_blob(bytes, pos, count * sizeof(float));
    t.data.resize(count);
    std::memcpy(t.data.data(), blob.data(), blob.size());
    ckpt.tensors.push_back(std::move(t));
  }
  return ckpt;
}

void Checkpoint::save(const std::filesystem::path& path) const {
  write_file(path, serialize());
}

Checkpoint Checkpoint::load(const std::filesystem::path& path) {
  return deserialize(read_file(path));
}

}  // namespace pdfgraph::embed
