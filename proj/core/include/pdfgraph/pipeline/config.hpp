#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "pdfgraph/embed/bert.hpp"
#include "pdfgraph/embed/cbow.hpp"
#include "pdfgraph/embed/pvdm.hpp"
#include "pdfgraph/gin/dnn.hpp"
#include "pdfgraph/gin/model.hpp"

namespace pdfgraph::pipeline {

enum class Scheme { Cbow, Pvdm, Bert };

Scheme scheme_from_name(const std::string& name);
std::string scheme_name(Scheme s);

struct AttackParams {
  int max_edits = 1000;
  int max_queries = 1000;
  int population = 100;
  int generations = 10;
  double sigma = -1.0;
  int top_k = 3;
};

// One structured config file drives every command; flags override fields.
// Unknown keys are rejected before any work starts.
struct PipelineConfig {
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::Cbow;

  // Shared embedding hyperparameters.
  int dim = 512;
  int window = 1;
  int neg_count = 5;
  double lr = 5e-4;
  int epochs = 100;
  int batch_size = 64;
  bool full_softmax = false;

  // BERT-specific.
  int bert_hidden = 512;
  int bert_layers = 8;
  int bert_heads = 8;
  int bert_intermediate = 307;
  double bert_lr = 1e-4;
  double bert_dropout = 0.1;
  bool bert_tie_mlm = true;

  gin::GinConfig gin;
  gin::DnnConfig dnn;
  AttackParams attack;

  static PipelineConfig from_json_text(const std::string& text);
  static PipelineConfig from_file(const std::filesystem::path& path);
  std::string to_json_text() const;

  // FNV-1a over the canonical JSON; stamped into every artifact.
  std::uint64_t hash() const;

  embed::CbowConfig cbow_config() const;
  embed::PvdmConfig pvdm_config() const;
  embed::BertConfig bert_config(int vocab_size) const;
  embed::BertTrainConfig bert_train_config() const;
};

}  // namespace pdfgraph::pipeline
