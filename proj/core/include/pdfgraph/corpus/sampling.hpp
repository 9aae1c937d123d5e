#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdfgraph/corpus/vocab.hpp"
#include "pdfgraph/graph/org.hpp"
#include "pdfgraph/util/rng.hpp"

namespace pdfgraph::corpus {

// --- CBOW ---

struct CbowInstance {
  std::vector<TokenId> context;
  TokenId center = 0;
};

// One instance per position with a non-empty window, truncated at the
// sentence boundaries.
std::vector<CbowInstance> cbow_windows(const std::vector<TokenId>& sentence_ids, int window);

// --- PV-DM ---

// Fixed context slots (window before + window after); boundary positions
// leave their slots empty (nullopt), matching the zero-vector input rule.
struct PvdmInstance {
  std::size_t paragraph = 0;  // index of the sentence/object
  std::vector<std::optional<TokenId>> context;  // size 2*window
  TokenId target = 0;
};

std::vector<PvdmInstance> pvdm_contexts(const std::vector<TokenId>& sentence_ids,
                                        std::size_t paragraph, int window);

// --- NOP pairs ---

struct NopPair {
  ObjectId a;
  ObjectId b;
  int label = 0;  // 1 = real reference edge
};

// Half the pairs (in expectation) are uniformly drawn true edges, the other
// half uniformly drawn ordered non-edges. count == 0 defaults to 2*|edges|.
// Degenerate graphs fall back to the class that exists; the diagnostic
// string is set in that case.
std::vector<NopPair> sample_nop_pairs(const graph::Org& org, Rng& rng, std::size_t count = 0,
                                      std::string* diagnostic = nullptr);

// --- MLM ---

struct MlmInstance {
  std::vector<TokenId> input_ids;   // with [CLS]/[SEP]
  std::vector<int> segment_ids;     // 0 for A (and its [SEP]), 1 for B
  std::vector<std::size_t> mask_positions;
  std::vector<TokenId> target_ids;  // originals at mask_positions
  int nop_label = 0;
};

inline constexpr std::size_t kMaxSequencePositions = 512;

// Builds the [CLS] a... [SEP] b... [SEP] encoding, truncating B's tail and
// then A's to fit kMaxSequencePositions.
MlmInstance make_pair_instance(const std::vector<TokenId>& a, const std::vector<TokenId>& b,
                               int nop_label);

// Selects round(0.15 * maskable) positions (>=1 when any exist); 80% become
// [MASK], 10% a random non-special vocab token, 10% stay unchanged.
void mask_mlm(MlmInstance& instance, const Vocab& vocab, Rng& rng);

// --- splits ---

// Deterministic shuffle then contiguous split; boundaries at
// round(n * cumulative ratio), so exact on divisible sizes.
std::vector<std::vector<std::size_t>> split_indices(std::size_t n,
                                                    const std::vector<double>& ratios,
                                                    std::uint64_t seed);

}  // namespace pdfgraph::corpus
