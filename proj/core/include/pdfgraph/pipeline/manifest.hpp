#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pdfgraph::pipeline {

struct ManifestEntry {
  std::filesystem::path path;
  std::optional<int> label;  // 0 benign, 1 malicious; absent for unlabeled
  std::string md5;
};

// Labeled file list with per-file content hashes; duplicate hashes are
// rejected. Built either from an explicit TSV ("path<TAB>benign|malicious"
// per line) or from a benign/ malicious/ directory layout; an explicit
// manifest wins when both are possible.
struct DatasetManifest {
  std::vector<ManifestEntry> entries;

  static DatasetManifest from_file(const std::filesystem::path& manifest_path);
  static DatasetManifest from_directory(const std::filesystem::path& root);
  // Unlabeled ingestion (single file or flat directory of PDFs).
  static DatasetManifest from_path_unlabeled(const std::filesystem::path& path);

  std::string to_text() const;
};

}  // namespace pdfgraph::pipeline
