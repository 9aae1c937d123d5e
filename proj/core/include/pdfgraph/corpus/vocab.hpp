#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdfgraph/corpus/token.hpp"

namespace pdfgraph::corpus {

// Special ids occupy 0..4 in this order.
enum SpecialToken : TokenId {
  kClsId = 0,
  kSepId = 1,
  kMaskId = 2,
  kPadId = 3,
  kUnkId = 4,
};
inline constexpr TokenId kSpecialCount = 5;
inline constexpr const char* kSpecialNames[kSpecialCount] = {"[CLS]", "[SEP]", "[MASK]",
                                                             "[PAD]", "[UNK]"};

class Vocab {
public:
  // Ids are assigned deterministically: specials first, then tokens by
  // descending corpus frequency, ties broken lexicographically. Tokens
  // below min_freq map to [UNK].
  static Vocab build(const std::vector<Sentence>& sentences, std::size_t min_freq = 1);

  TokenId id_of(const std::string& token) const;
  const std::string& token_of(TokenId id) const { return id_to_token_.at(id); }
  std::size_t size() const { return id_to_token_.size(); }

  // Document frequency over the training sentences and the sentence count,
  // both fixed at build time (TF-IDF inputs).
  std::size_t doc_frequency(TokenId id) const { return df_.at(id); }
  std::size_t sentence_count() const { return sentence_count_; }

  std::vector<TokenId> encode(const Sentence& sentence) const;

  // FNV-1a over the id-ordered token list; checkpoints store it so mixed
  // vocab/model pairs fail fast.
  std::uint64_t content_hash() const;

  // One token per line in id order; the five specials form the header.
  // Document statistics travel in checkpoints, not here.
  std::string to_text() const;
  static Vocab from_text(const std::string& text);
  void set_document_stats(std::vector<std::size_t> df, std::size_t sentence_count);
  const std::vector<std::size_t>& df() const { return df_; }

  bool operator==(const Vocab& o) const {
    return id_to_token_ == o.id_to_token_ && df_ == o.df_ && sentence_count_ == o.sentence_count_;
  }

private:
  std::unordered_map<std::string, TokenId> token_to_id_;
  std::vector<std::string> id_to_token_;
  std::vector<std::size_t> df_;
  std::size_t sentence_count_ = 0;
};

}  // namespace pdfgraph::corpus
