// Command line front end: parse, graph, pretrain, train, classify, attack,
// eval. Each subcommand wraps the corresponding pipeline function; flags
// override config-file fields.

#include <CLI11.hpp>

#include <iostream>

#include "pdfgraph/pipeline/commands.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pdfgraph;

pipeline::PipelineConfig load_config(const std::string& config_path, std::uint64_t* seed_flag,
                                     std::string* scheme_flag) {
  pipeline::PipelineConfig cfg;
  if (!config_path.empty()) cfg = pipeline::PipelineConfig::from_file(config_path);
  if (seed_flag) cfg.seed = *seed_flag;
  if (scheme_flag && !scheme_flag->empty()) cfg.scheme = pipeline::scheme_from_name(*scheme_flag);
  return cfg;
}

pipeline::DatasetManifest load_dataset(const std::string& manifest_path,
                                       const std::string& data_dir) {
  if (!manifest_path.empty()) return pipeline::DatasetManifest::from_file(manifest_path);
  if (!data_dir.empty()) return pipeline::DatasetManifest::from_directory(data_dir);
  throw std::invalid_argument("either --manifest or --data-dir is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDF object-graph analysis toolkit"};
  app.require_subcommand(1);

  std::string input, outdir = ".", config_path, manifest_path, data_dir;
  std::string embed_ckpt, gin_ckpt, out_csv, scheme, method;
  std::uint64_t seed = 1;
  bool dnn_baseline = false;
  std::vector<int> budgets;

  auto* parse = app.add_subcommand("parse", "Parse PDFs into IR text plus diagnostics");
  parse->add_option("input", input, "PDF file or directory")->required();
  parse->add_option("-o,--out", outdir, "Output directory");

  auto* graph = app.add_subcommand("graph", "Build object reference graphs from IR files");
  graph->add_option("input", input, "IR file or directory")->required();
  graph->add_option("-o,--out", outdir, "Output directory");

  auto* pretrain = app.add_subcommand("pretrain", "Train an embedding scheme on a corpus");
  pretrain->add_option("--manifest", manifest_path, "Dataset manifest TSV");
  pretrain->add_option("--data-dir", data_dir, "Directory with benign/ and malicious/");
  pretrain->add_option("--config", config_path, "Pipeline config JSON");
  pretrain->add_option("--scheme", scheme, "cbow|pvdm|bert (overrides config)");
  pretrain->add_option("--seed", seed, "Seed (overrides config)");
  pretrain->add_option("-o,--out", outdir, "Output directory");

  auto* train = app.add_subcommand("train", "Train the graph classifier");
  train->add_option("--manifest", manifest_path, "Dataset manifest TSV");
  train->add_option("--data-dir", data_dir, "Directory with benign/ and malicious/");
  train->add_option("--embedding", embed_ckpt, "Embedding checkpoint")->required();
  train->add_option("--config", config_path, "Pipeline config JSON");
  train->add_option("--seed", seed, "Seed (overrides config)");
  train->add_flag("--dnn-baseline", dnn_baseline, "Train the mean-pooled DNN ablation instead");
  train->add_option("-o,--out", outdir, "Output directory");

  auto* classify = app.add_subcommand("classify", "Classify PDFs");
  classify->add_option("input", input, "PDF file or directory")->required();
  classify->add_option("--embedding", embed_ckpt, "Embedding checkpoint")->required();
  classify->add_option("--model", gin_ckpt, "Classifier checkpoint")->required();
  classify->add_option("--csv", out_csv, "Write predictions CSV here");

  auto* attack = app.add_subcommand("attack", "Run feature-space attacks against a classifier");
  attack->add_option("method", method, "gradargmax|genetic|randomnoise")->required();
  attack->add_option("--manifest", manifest_path, "Dataset manifest TSV");
  attack->add_option("--data-dir", data_dir, "Directory with benign/ and malicious/");
  attack->add_option("--embedding", embed_ckpt, "Embedding checkpoint")->required();
  attack->add_option("--model", gin_ckpt, "Classifier checkpoint")->required();
  attack->add_option("--config", config_path, "Pipeline config JSON");
  attack->add_option("--seed", seed, "Seed (overrides config)");
  attack->add_option("--budgets", budgets, "Edit-budget sweep (e.g. 0 10 100 1000)");
  attack->add_option("-o,--out", outdir, "Output directory");

  auto* eval = app.add_subcommand("eval", "Evaluate a classifier on a labeled set");
  eval->add_option("--manifest", manifest_path, "Dataset manifest TSV");
  eval->add_option("--data-dir", data_dir, "Directory with benign/ and malicious/");
  eval->add_option("--embedding", embed_ckpt, "Embedding checkpoint")->required();
  eval->add_option("--model", gin_ckpt, "Classifier checkpoint")->required();
  eval->add_option("-o,--out", outdir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse->parsed()) return pipeline::cmd_parse(input, outdir, std::cout);
    if (graph->parsed()) return pipeline::cmd_graph(input, outdir, std::cout);
    if (pretrain->parsed()) {
      const auto cfg = load_config(config_path, pretrain->count("--seed") ? &seed : nullptr,
                                   &scheme);
      return pipeline::cmd_pretrain(load_dataset(manifest_path, data_dir), cfg, outdir,
                                    std::cout);
    }
    if (train->parsed()) {
      const auto cfg = load_config(config_path, train->count("--seed") ? &seed : nullptr, nullptr);
      return pipeline::cmd_train(load_dataset(manifest_path, data_dir), embed_ckpt, cfg,
                                 dnn_baseline, outdir, std::cout);
    }
    if (classify->parsed())
      return pipeline::cmd_classify(input, embed_ckpt, gin_ckpt, out_csv, std::cout);
    if (attack->parsed()) {
      const auto cfg = load_config(config_path, attack->count("--seed") ? &seed : nullptr,
                                   nullptr);
      return pipeline::cmd_attack(method, load_dataset(manifest_path, data_dir), embed_ckpt,
                                  gin_ckpt, cfg, budgets, outdir, std::cout);
    }
    if (eval->parsed())
      return pipeline::cmd_eval(load_dataset(manifest_path, data_dir), embed_ckpt, gin_ckpt,
                                outdir, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pipeline::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pipeline::kExitIo;
  }
  return pipeline::kExitUsage;
}
