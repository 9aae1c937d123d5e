#pragma once

#include <vector>

#include "pdfgraph/corpus/sampling.hpp"
#include "pdfgraph/corpus/vocab.hpp"
#include "pdfgraph/embed/cbow.hpp"

namespace pdfgraph::embed {

struct PvdmConfig {
  int dim = 512;
  int window = 1;
  int neg_count = 5;
  double lr = 5e-4;
  int epochs = 100;
  int batch_size = 64;
  bool full_softmax = false;
  std::uint64_t seed = 1;
};

// Distributed-memory paragraph vectors: the input is the concatenation
// [paragraph; context slots], projected straight to vocabulary scores.
// Empty context slots contribute zero vectors.
class PvdmModel {
public:
  PvdmModel() = default;
  PvdmModel(PvdmConfig config, std::size_t vocab_size, std::size_t paragraph_count,
            Rng& init_rng);

  const PvdmConfig& config() const { return config_; }
  Eigen::Index concat_width() const { return words.value.cols() * (1 + 2 * config_.window); }

  double instance_loss(const corpus::PvdmInstance& inst, const std::vector<TokenId>& negatives,
                       bool train);
  double softmax_loss(const corpus::PvdmInstance& inst, bool train);

  // Vocabulary scores for cloze prediction; the paragraph slot takes an
  // explicit vector (a TF-IDF average for unseen sentences).
  nn::Vector scores(const nn::Vector& paragraph_vec,
                    const std::vector<std::optional<TokenId>>& context) const;

  nn::ParamRefs params() { return {&words, &paragraphs, &projection}; }

  Checkpoint to_checkpoint(const corpus::Vocab& vocab) const;
  static PvdmModel from_checkpoint(const Checkpoint& ckpt);

  nn::Param words;       // V x d
  nn::Param paragraphs;  // P x d
  nn::Param projection;  // V x (d * (1 + 2*window))

private:
  nn::Vector assemble(const corpus::PvdmInstance& inst) const;
  PvdmConfig config_;
};

PvdmModel train_pvdm(const std::vector<std::vector<TokenId>>& corpus, const corpus::Vocab& vocab,
                     const PvdmConfig& config, TrainLog* log = nullptr);

}  // namespace pdfgraph::embed
