#pragma once

#include <memory>
#include <vector>

#include "pdfgraph/embed/bert.hpp"
#include "pdfgraph/embed/cbow.hpp"
#include "pdfgraph/embed/pvdm.hpp"

namespace pdfgraph::embed {

// Seam between embedding schemes and the graph classifier. An external
// embedding provider would implement this same interface; only the three
// self-trained schemes ship here.
class ObjectEmbedder {
public:
  virtual ~ObjectEmbedder() = default;
  virtual nn::Vector embed(const std::vector<TokenId>& sentence_ids) const = 0;
  virtual Eigen::Index dim() const = 0;
};

class CbowEmbedder : public ObjectEmbedder {
public:
  CbowEmbedder(const CbowModel& model, const corpus::Vocab& vocab)
      : model_(model), vocab_(vocab) {}
  nn::Vector embed(const std::vector<TokenId>& ids) const override {
    return object_embedding_avg(model_.input.value, ids, vocab_).first;
  }
  Eigen::Index dim() const override { return model_.input.value.cols(); }

private:
  const CbowModel& model_;
  const corpus::Vocab& vocab_;
};

// Word-vector averaging per the published scheme; learned paragraph rows
// stay internal to training.
class PvdmEmbedder : public ObjectEmbedder {
public:
  PvdmEmbedder(const PvdmModel& model, const corpus::Vocab& vocab)
      : model_(model), vocab_(vocab) {}
  nn::Vector embed(const std::vector<TokenId>& ids) const override {
    return object_embedding_avg(model_.words.value, ids, vocab_).first;
  }
  Eigen::Index dim() const override { return model_.words.value.cols(); }

private:
  const PvdmModel& model_;
  const corpus::Vocab& vocab_;
};

class BertEmbedder : public ObjectEmbedder {
public:
  explicit BertEmbedder(const TinyBert& model) : model_(model) {}
  nn::Vector embed(const std::vector<TokenId>& ids) const override {
    if (ids.empty()) return nn::Vector::Zero(model_.config().hidden);
    return model_.cls_embedding(ids);
  }
  Eigen::Index dim() const override { return model_.config().hidden; }

private:
  const TinyBert& model_;
};

}  // namespace pdfgraph::embed
