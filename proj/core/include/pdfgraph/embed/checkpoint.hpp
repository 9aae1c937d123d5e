#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pdfgraph/nn/param.hpp"

namespace pdfgraph::embed {

struct NamedTensor {
  std::string name;
  std::vector<std::uint64_t> shape;
  std::vector<float> data;  // row-major, little-endian on disk

  static NamedTensor from_matrix(const std::string& name, const nn::Matrix& m);
  nn::Matrix to_matrix() const;
};

// "POV1" container: magic, metadata block (scheme, dims, vocab hash,
// config), then 32-bit float tensors behind a name/shape directory.
struct Checkpoint {
  std::string scheme;                          // cbow | pvdm | bert | gin | dnn
  std::map<std::string, std::string> metadata; // flat, deterministic order
  std::vector<NamedTensor> tensors;

  void add_matrix(const std::string& name, const nn::Matrix& m) {
    tensors.push_back(NamedTensor::from_matrix(name, m));
  }
  const NamedTensor& tensor(const std::string& name) const;
  bool has_tensor(const std::string& name) const;
  const std::string& meta(const std::string& key) const;

  std::string serialize() const;
  static Checkpoint deserialize(const std::string& bytes);

  void save(const std::filesystem::path& path) const;
  static Checkpoint load(const std::filesystem::path& path);
};

}  // namespace pdfgraph::embed
