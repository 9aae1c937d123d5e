#include "pdfgraph/corpus/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pdfgraph::corpus {

std::vector<CbowInstance> cbow_windows(const std::vector<TokenId>& sentence_ids, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<CbowInstance> out;
  const std::size_t n = sentence_ids.size();
  for (std::size_t i = 0; i < n; ++i) {
    CbowInstance inst;
    inst.center = sentence_ids[i];
    const std::size_t lo = i >= static_cast<std::size_t>(window) ? i - window : 0;
    const std::size_t hi = std::min(n, i + static_cast<std::size_t>(window) + 1);
    for (std::size_t j = lo; j < hi; ++j)
      if (j != i) inst.context.push_back(sentence_ids[j]);
    if (!inst.context.empty()) out.push_back(std::move(inst));
  }
  return out;
}

std::vector<PvdmInstance> pvdm_contexts(const std::vector<TokenId>& sentence_ids,
                                        std::size_t paragraph, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<PvdmInstance> out;
  const std::size_t n = sentence_ids.size();
  for (std::size_t i = 0; i < n; ++i) {
    PvdmInstance inst;
    inst.paragraph = paragraph;
    inst.target = sentence_ids[i];
    inst.context.assign(static_cast<std::size_t>(2 * window), std::nullopt);
    for (int k = 1; k <= window; ++k) {
      if (i >= static_cast<std::size_t>(k))
        inst.context[static_cast<std::size_t>(window - k)] = sentence_ids[i - k];
      if (i + k < n)
        inst.context[static_cast<std::size_t>(window + k - 1)] = sentence_ids[i + k];
    }
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<NopPair> sample_nop_pairs(const graph::Org& org, Rng& rng, std::size_t count,
                                      std::string* diagnostic) {
  const std::size_t n = org.nodes.size();
  std::vector<std::pair<ObjectId, ObjectId>> edges(org.edges.begin(), org.edges.end());
  if (count == 0) count = edges.size() * 2;

  const std::size_t ordered_pairs = n * (n - 1);
  const bool has_negatives = n >= 2 && edges.size() < ordered_pairs;
  const bool has_positives = !edges.empty();
  if (!has_positives && !has_negatives)
    throw std::invalid_argument("graph has neither edges nor non-edges to sample");
  if (diagnostic && (!has_positives || !has_negatives))
    *diagnostic = has_positives ? "no non-edges exist; all pairs labeled 1"
                                : "no edges exist; all pairs labeled 0";

  std::vector<NopPair> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    bool positive = rng.bernoulli(0.5);
    if (positive && !has_positives) positive = false;
    if (!positive && !has_negatives) positive = true;
    if (positive) {
      const auto& [a, b] = edges[rng.uniform_index(edges.size())];
      out.push_back(NopPair{a, b, 1});
    } else {
      while (true) {
        const std::size_t i = static_cast<std::size_t>(rng.uniform_index(n));
        const std::size_t j = static_cast<std::size_t>(rng.uniform_index(n));
        if (i == j) continue;
        const ObjectId a = org.nodes[i].first;
        const ObjectId b = org.nodes[j].first;
        if (org.has_edge(a, b)) continue;
        out.push_back(NopPair{a, b, 0});
        break;
      }
    }
  }
  return out;
}

MlmInstance make_pair_instance(const std::vector<TokenId>& a, const std::vector<TokenId>& b,
                               int nop_label) {
  std::vector<TokenId> ta = a;
  std::vector<TokenId> tb = b;
  // [CLS] + A + [SEP] + B + [SEP]; trim B's tail first, then A's.
  const std::size_t budget = kMaxSequencePositions - 3;
  while (ta.size() + tb.size() > budget && !tb.empty()) tb.pop_back();
  while (ta.size() + tb.size() > budget && !ta.empty()) ta.pop_back();

  MlmInstance inst;
  inst.nop_label = nop_label;
  inst.input_ids.push_back(kClsId);
  inst.segment_ids.push_back(0);
  for (TokenId t : ta) {
    inst.input_ids.push_back(t);
    inst.segment_ids.push_back(0);
  }
  inst.input_ids.push_back(kSepId);
  inst.segment_ids.push_back(0);
  for (TokenId t : tb) {
    inst.input_ids.push_back(t);
    inst.segment_ids.push_back(1);
  }
  inst.input_ids.push_back(kSepId);
  inst.segment_ids.push_back(1);
  return inst;
}

void mask_mlm(MlmInstance& instance, const Vocab& vocab, Rng& rng) {
  std::vector<std::size_t> maskable;
  for (std::size_t i = 0; i < instance.input_ids.size(); ++i)
    if (instance.input_ids[i] >= kSpecialCount) maskable.push_back(i);
  if (maskable.empty()) return;

  std::size_t n_mask = static_cast<std::size_t>(std::llround(0.15 * static_cast<double>(maskable.size())));
  n_mask = std::max<std::size_t>(1, std::min(n_mask, maskable.size()));

  rng.shuffle(maskable);
  maskable.resize(n_mask);
  std::sort(maskable.begin(), maskable.end());

  const std::size_t vocab_size = vocab.size();
  for (std::size_t pos : maskable) {
    instance.mask_positions.push_back(pos);
    instance.target_ids.push_back(instance.input_ids[pos]);
    const double u = rng.uniform_real();
    if (u < 0.8) {
      instance.input_ids[pos] = kMaskId;
    } else if (u < 0.9) {
      // Random non-special vocabulary token.
      const std::size_t span = vocab_size - kSpecialCount;
      if (span > 0)
        instance.input_ids[pos] =
            static_cast<TokenId>(kSpecialCount + rng.uniform_index(span));
    }  // else left unchanged
  }
}

std::vector<std::vector<std::size_t>> split_indices(std::size_t n,
                                                    const std::vector<double>& ratios,
                                                    std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("cannot split an empty input");
  double sum = std::accumulate(ratios.begin(), ratios.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("ratios must sum to 1");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<std::vector<std::size_t>> out;
  double cum = 0.0;
  std::size_t begin = 0;
  for (std::size_t r = 0; r < ratios.size(); ++r) {
    cum += ratios[r];
    std::size_t end = r + 1 == ratios.size()
                          ? n
                          : static_cast<std::size_t>(std::llround(cum * static_cast<double>(n)));
    end = std::min(end, n);
    out.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(begin),
                     order.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  return out;
}

}  // namespace pdfgraph::corpus
