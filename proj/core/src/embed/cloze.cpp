#include "pdfgraph/embed/cloze.hpp"

namespace pdfgraph::embed {
namespace {

// Argmax over real tokens only; specials are never valid cloze answers.
corpus::TokenId argmax_non_special(const nn::Vector& scores) {
  Eigen::Index best = corpus::kSpecialCount;
  for (Eigen::Index i = corpus::kSpecialCount; i < scores.size(); ++i)
    if (scores(i) > scores(best)) best = i;
  return static_cast<corpus::TokenId>(best);
}

}  // namespace

double cloze_cbow(const CbowModel& model, const std::vector<std::vector<TokenId>>& sentences,
                  Rng& rng) {
  if (sentences.empty()) return 0.0;
  const int w = model.config().window;
  std::size_t hits = 0, total = 0;
  for (const auto& s : sentences) {
    if (s.empty()) continue;
    const std::size_t pos = static_cast<std::size_t>(rng.uniform_index(s.size()));
    std::vector<TokenId> context;
    for (std::size_t j = pos >= static_cast<std::size_t>(w) ? pos - w : 0;
         j < std::min(s.size(), pos + static_cast<std::size_t>(w) + 1); ++j)
      if (j != pos) context.push_back(s[j]);
    const nn::Vector scores = model.context_scores(context);
    hits += argmax_non_special(scores) == s[pos] ? 1 : 0;
    ++total;
  }
  return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

double cloze_pvdm(const PvdmModel& model, const corpus::Vocab& vocab,
                  const std::vector<std::vector<TokenId>>& sentences, Rng& rng) {
  if (sentences.empty()) return 0.0;
  const int w = model.config().window;
  std::size_t hits = 0, total = 0;
  for (const auto& s : sentences) {
    if (s.empty()) continue;
    const std::size_t pos = static_cast<std::size_t>(rng.uniform_index(s.size()));
    // Unseen paragraphs use the TF-IDF average of their word vectors.
    auto [para, ok] = object_embedding_avg(model.words.value, s, vocab);
    (void)ok;
    std::vector<std::optional<TokenId>> context(static_cast<std::size_t>(2 * w), std::nullopt);
    for (int k = 1; k <= w; ++k) {
      if (pos >= static_cast<std::size_t>(k))
        context[static_cast<std::size_t>(w - k)] = s[pos - static_cast<std::size_t>(k)];
      if (pos + static_cast<std::size_t>(k) < s.size())
        context[static_cast<std::size_t>(w + k - 1)] = s[pos + static_cast<std::size_t>(k)];
    }
    const nn::Vector scores = model.scores(para, context);
    hits += argmax_non_special(scores) == s[pos] ? 1 : 0;
    ++total;
  }
  return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

double cloze_bert(const TinyBert& model, const std::vector<std::vector<TokenId>>& sentences,
                  Rng& rng) {
  if (sentences.empty()) return 0.0;
  std::size_t hits = 0, total = 0;
  for (const auto& s : sentences) {
    if (s.empty()) continue;
    const std::size_t pos = static_cast<std::size_t>(rng.uniform_index(s.size()));
    corpus::MlmInstance inst;
    inst.input_ids.push_back(corpus::kClsId);
    for (TokenId t : s) inst.input_ids.push_back(t);
    inst.input_ids.push_back(corpus::kSepId);
    if (inst.input_ids.size() > corpus::kMaxSequencePositions) continue;
    inst.segment_ids.assign(inst.input_ids.size(), 0);
    const TokenId answer = inst.input_ids[pos + 1];
    inst.input_ids[pos + 1] = corpus::kMaskId;
    inst.mask_positions.push_back(pos + 1);
    inst.target_ids.push_back(answer);
    const std::vector<int> attn_mask(inst.input_ids.size(), 1);
    const BertOutput out = model.forward(inst, attn_mask, false, nullptr, nullptr);
    const nn::Vector scores = out.mlm_logits.row(0).transpose();
    hits += argmax_non_special(scores) == answer ? 1 : 0;
    ++total;
  }
  return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

}  // namespace pdfgraph::embed
