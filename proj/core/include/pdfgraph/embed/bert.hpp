#pragma once

#include <map>
#include <vector>

#include "pdfgraph/corpus/sampling.hpp"
#include "pdfgraph/corpus/vocab.hpp"
#include "pdfgraph/embed/checkpoint.hpp"
#include "pdfgraph/nn/ops.hpp"

namespace pdfgraph::embed {

struct BertConfig {
  int vocab_size = 0;
  int hidden = 512;
  int num_layers = 8;
  int num_heads = 8;
  int intermediate = 307;
  int max_positions = 512;
  int type_vocab = 2;
  double hidden_dropout = 0.1;
  double attn_dropout = 0.1;
  double layer_norm_eps = 1e-12;
  double initializer_range = 0.02;
  bool tie_mlm = true;

  // 8 layers / 8 heads / hidden 512; too heavy for CI.
  static BertConfig paper_scale(int vocab);
  // 2 layers / 4 heads / hidden 64; the test default.
  static BertConfig desk_scale(int vocab);
};

struct EncoderLayerCache {
  nn::Linear::Cache q, k, v, o, f1, f2;
  nn::LayerNorm::Cache ln1, ln2;
  nn::Matrix Q, K, V;
  std::vector<nn::Matrix> probs;          // per head, post-mask pre-dropout
  std::vector<nn::Matrix> probs_dropped;  // what actually multiplied V
  std::vector<nn::Matrix> attn_drop_mask;
  nn::Matrix attn_proj_drop_mask;
  nn::Matrix ff1_out;
  nn::Matrix gelu_out;
  nn::Matrix ffn_drop_mask;
};

class EncoderLayer {
public:
  EncoderLayer() = default;
  EncoderLayer(const BertConfig& config, int index);

  // attn_mask: 1 = attend, 0 = padding key. forward is const; pass a cache
  // to enable backward.
  nn::Matrix forward(const nn::Matrix& X, const std::vector<int>& attn_mask, bool train,
                     Rng* rng, EncoderLayerCache* cache) const;
  nn::Matrix backward(const nn::Matrix& dY, const EncoderLayerCache& cache);

  nn::ParamRefs params();

  nn::Linear wq, wk, wv, wo, ff1, ff2;
  nn::LayerNorm ln1, ln2;

private:
  int heads_ = 1;
  double attn_dropout_ = 0.0;
  double hidden_dropout_ = 0.0;
};

struct BertForwardCache {
  std::vector<corpus::TokenId> ids;
  std::vector<int> segments;
  nn::LayerNorm::Cache emb_ln;
  nn::Matrix emb_drop_mask;
  std::vector<EncoderLayerCache> layers;
  nn::Matrix last_hidden;
  nn::Matrix mlm_hidden;  // gathered rows at mask positions
  nn::Linear::Cache nop;
};

struct BertOutput {
  nn::Matrix last_hidden;  // n x hidden
  nn::Matrix mlm_logits;   // |mask positions| x vocab
  nn::Matrix nop_logits;   // 1 x 2
};

class TinyBert {
public:
  TinyBert() = default;
  TinyBert(BertConfig config, Rng& init_rng);

  const BertConfig& config() const { return config_; }

  BertOutput forward(const corpus::MlmInstance& instance, const std::vector<int>& attn_mask,
                     bool train, Rng* dropout_rng, BertForwardCache* cache) const;

  // Joint loss for one instance: sum of the masked-token cross-entropies
  // plus the pair-label cross-entropy. Accumulates grads when train.
  double instance_loss(const corpus::MlmInstance& instance, bool train, Rng* dropout_rng,
                       double* mlm_part = nullptr, double* nop_part = nullptr);

  // Last-hidden vector at position 0 of "[CLS] sentence" (single segment).
  nn::Vector cls_embedding(const std::vector<corpus::TokenId>& sentence_ids) const;

  nn::ParamRefs params();

  Checkpoint to_checkpoint(const corpus::Vocab& vocab) const;
  static TinyBert from_checkpoint(const Checkpoint& ckpt);

  nn::Param tok_table, pos_table, seg_table;
  nn::LayerNorm emb_ln;
  std::vector<EncoderLayer> encoder;
  nn::Linear nop_head;
  nn::Param mlm_decoder;  // used when !tie_mlm

private:
  BertConfig config_;
};

struct BertTrainConfig {
  int epochs = 100;
  int batch_size = 64;
  double lr = 1e-4;
  double warmup_fraction = 0.05;
  std::uint64_t seed = 1;
};

struct BertTrainLog {
  std::vector<double> epoch_loss, epoch_mlm, epoch_nop;
};

// One document's rebuilt graph plus its encoded sentences; the unit the
// NOP sampler and the downstream classifier both consume.
struct GraphCorpus {
  graph::Org org;
  std::map<pdf::ObjectId, std::vector<corpus::TokenId>> sentences;
};

// NOP pairs (2x edges per document, 50/50 labels) encoded and statically
// masked. Documents whose graphs cannot be paired are skipped.
std::vector<corpus::MlmInstance> make_bert_instances(const std::vector<GraphCorpus>& docs,
                                                     const corpus::Vocab& vocab, Rng& rng);

TinyBert train_bert(std::vector<corpus::MlmInstance> instances, const BertConfig& config,
                    const BertTrainConfig& train_config, BertTrainLog* log = nullptr);

}  // namespace pdfgraph::embed
