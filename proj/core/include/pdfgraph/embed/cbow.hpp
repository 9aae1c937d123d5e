#pragma once

#include <vector>

#include "pdfgraph/corpus/sampling.hpp"
#include "pdfgraph/corpus/vocab.hpp"
#include "pdfgraph/embed/checkpoint.hpp"
#include "pdfgraph/nn/param.hpp"

namespace pdfgraph::embed {

using corpus::TokenId;

struct CbowConfig {
  int dim = 512;
  int window = 1;  // the worked example uses 2; both are supported
  int neg_count = 5;
  double lr = 5e-4;
  int epochs = 100;
  int batch_size = 64;
  double dropout = 0.0;
  bool full_softmax = false;  // fidelity mode; negative sampling is default
  std::uint64_t seed = 1;
};

struct TrainLog {
  std::vector<double> epoch_loss;
};

// Two embedding tables: input (context) vectors and output (center) vectors.
class CbowModel {
public:
  CbowModel() = default;
  CbowModel(CbowConfig config, std::size_t vocab_size, Rng& init_rng);

  const CbowConfig& config() const { return config_; }
  std::size_t vocab_size() const { return static_cast<std::size_t>(input.value.rows()); }

  // Word vector used for object averaging (input table row).
  nn::Vector word_vector(TokenId id) const { return input.value.row(id).transpose(); }

  // Negative-sampling logistic loss for one window; negatives are explicit
  // so gradient checks can freeze them. Accumulates grads when train.
  double instance_loss(const corpus::CbowInstance& inst, const std::vector<TokenId>& negatives,
                       bool train, Rng* dropout_rng = nullptr);

  // Full-softmax cross-entropy over the whole vocabulary.
  double softmax_loss(const corpus::CbowInstance& inst, bool train, Rng* dropout_rng = nullptr);

  // Scores for cloze prediction given a context (mean of input vectors).
  nn::Vector context_scores(const std::vector<TokenId>& context) const;

  nn::ParamRefs params() { return {&input, &output}; }

  Checkpoint to_checkpoint(const corpus::Vocab& vocab) const;
  static CbowModel from_checkpoint(const Checkpoint& ckpt);

  nn::Param input;   // V x d
  nn::Param output;  // V x d

private:
  CbowConfig config_;
};

// Unigram^0.75 negative sampler over non-special ids.
class NegativeSampler {
public:
  NegativeSampler(const std::vector<std::vector<TokenId>>& corpus, std::size_t vocab_size);
  TokenId draw(Rng& rng) const;
  std::vector<TokenId> draw_excluding(Rng& rng, TokenId exclude, int count) const;

private:
  std::vector<double> cumulative_;
};

CbowModel train_cbow(const std::vector<std::vector<TokenId>>& corpus, const corpus::Vocab& vocab,
                     const CbowConfig& config, TrainLog* log = nullptr);

// TF-IDF weighted average of word vectors; zero vector (and false) for an
// empty sentence.
std::pair<nn::Vector, bool> object_embedding_avg(
    const nn::Matrix& word_table, const std::vector<TokenId>& sentence_ids,
    const corpus::Vocab& vocab);

}  // namespace pdfgraph::embed
