#include "pdfgraph/pipeline/manifest.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pdfgraph/util/bytes.hpp"

namespace pdfgraph::pipeline {
namespace {

namespace fs = std::filesystem;

void finalize(DatasetManifest& m) {
  std::sort(m.entries.begin(), m.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
  std::set<std::string> seen;
  for (auto& e : m.entries) {
    e.md5 = md5_hex(read_file(e.path));
    if (!seen.insert(e.md5).second)
      throw std::runtime_error("duplicate content hash in dataset: " + e.path.string());
  }
}

std::vector<fs::path> files_under(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::exists(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DatasetManifest DatasetManifest::from_file(const fs::path& manifest_path) {
  DatasetManifest m;
  std::istringstream in(read_file(manifest_path));
  std::string line;
  const fs::path base = manifest_path.parent_path();
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("manifest line missing tab separator: " + line);
    ManifestEntry e;
    fs::path p = line.substr(0, tab);
    e.path = p.is_absolute() ? p : base / p;
    const std::string label = line.substr(tab + 1);
    if (label == "benign") {
      e.label = 0;
    } else if (label == "malicious") {
      e.label = 1;
    } else {
      throw std::runtime_error("manifest label must be benign|malicious, got: " + label);
    }
    m.entries.push_back(std::move(e));
  }
  finalize(m);
  return m;
}

DatasetManifest DatasetManifest::from_directory(const fs::path& root) {
  DatasetManifest m;
  for (const auto& p : files_under(root / "benign"))
    m.entries.push_back(ManifestEntry{p, 0, {}});
  for (const auto& p : files_under(root / "malicious"))
    m.entries.push_back(ManifestEntry{p, 1, {}});
  if (m.entries.empty())
    throw std::runtime_error("no benign/ or malicious/ files under " + root.string());
  finalize(m);
  return m;
}

DatasetManifest DatasetManifest::from_path_unlabeled(const fs::path& path) {
  DatasetManifest m;
  if (fs::is_directory(path)) {
    for (const auto& p : files_under(path)) m.entries.push_back(ManifestEntry{p, std::nullopt, {}});
  } else if (fs::exists(path)) {
    m.entries.push_back(ManifestEntry{path, std::nullopt, {}});
  } else {
    throw std::runtime_error("no such input: " + path.string());
  }
  finalize(m);
  return m;
}

std::string DatasetManifest::to_text() const {
  std::string out;
  for (const auto& e : entries) {
    out += e.path.string();
    out += "\t";
    out += e.label ? (*e.label == 1 ? "malicious" : "benign") : "unlabeled";
    out += "\t";
    out += e.md5;
    out += "\n";
  }
  return out;
}

}  // namespace pdfgraph::pipeline
