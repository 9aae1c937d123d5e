#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdfgraph/pipeline/config.hpp"
#include "pdfgraph/pipeline/manifest.hpp"

namespace pdfgraph::pipeline {

// Exit codes: 0 success (repaired parses included), 1 usage/config error,
// 2 I/O error, 3 checkpoint/config mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitMismatch = 3;

int cmd_parse(const std::filesystem::path& input, const std::filesystem::path& outdir,
              std::ostream& log);

int cmd_graph(const std::filesystem::path& ir_input, const std::filesystem::path& outdir,
              std::ostream& log);

int cmd_pretrain(const DatasetManifest& manifest, const PipelineConfig& config,
                 const std::filesystem::path& outdir, std::ostream& log);

int cmd_train(const DatasetManifest& manifest, const std::filesystem::path& embed_ckpt,
              const PipelineConfig& config, bool dnn_baseline,
              const std::filesystem::path& outdir, std::ostream& log);

int cmd_classify(const std::filesystem::path& input, const std::filesystem::path& embed_ckpt,
                 const std::filesystem::path& gin_ckpt, const std::filesystem::path& out_csv,
                 std::ostream& log);

int cmd_attack(const std::string& method, const DatasetManifest& manifest,
               const std::filesystem::path& embed_ckpt, const std::filesystem::path& gin_ckpt,
               const PipelineConfig& config, const std::vector<int>& budgets,
               const std::filesystem::path& outdir, std::ostream& log);

int cmd_eval(const DatasetManifest& manifest, const std::filesystem::path& embed_ckpt,
             const std::filesystem::path& gin_ckpt, const std::filesystem::path& outdir,
             std::ostream& log);

}  // namespace pdfgraph::pipeline
