#include "pdfgraph/corpus/vocab.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pdfgraph::corpus {

Vocab Vocab::build(const std::vector<Sentence>& sentences, std::size_t min_freq) {
  if (sentences.empty()) throw std::invalid_argument("vocabulary needs a non-empty corpus");

  std::map<std::string, std::size_t> freq;
  std::map<std::string, std::size_t> df;
  for (const auto& s : sentences) {
    std::set<std::string> seen;
    for (const auto& t : s.tokens) {
      ++freq[t];
      seen.insert(t);
    }
    for (const auto& t : seen) ++df[t];
  }

  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocab v;
  v.sentence_count_ = sentences.size();
  for (TokenId i = 0; i < kSpecialCount; ++i) {
    v.id_to_token_.emplace_back(kSpecialNames[i]);
    v.token_to_id_.emplace(kSpecialNames[i], i);
    v.df_.push_back(0);
  }
  for (const auto& [token, count] : ranked) {
    if (count < min_freq) continue;
    const TokenId id = static_cast<TokenId>(v.id_to_token_.size());
    v.id_to_token_.push_back(token);
    v.token_to_id_.emplace(token, id);
    v.df_.push_back(df[token]);
  }
  return v;
}

TokenId Vocab::id_of(const std::string& token) const {
  const auto it = token_to_id_.find(token);
  return it == token_to_id_.end() ? kUnkId : it->second;
}

std::vector<TokenId> Vocab::encode(const Sentence& sentence) const {
  std::vector<TokenId> out;
  out.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) out.push_back(id_of(t));
  return out;
}

std::uint64_t Vocab::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& t : id_to_token_) {
    for (const char c : t) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= 0x1f;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Vocab::to_text() const {
  std::string out;
  for (const auto& t : id_to_token_) {
    out += t;
    out += "\n";
  }
  return out;
}

Vocab Vocab::from_text(const std::string& text) {
  Vocab v;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const TokenId id = static_cast<TokenId>(v.id_to_token_.size());
    v.id_to_token_.push_back(line);
    v.token_to_id_.emplace(v.id_to_token_.back(), id);
    v.df_.push_back(0);
  }
  if (v.id_to_token_.size() < kSpecialCount) throw std::runtime_error("vocabulary too small");
  for (TokenId i = 0; i < kSpecialCount; ++i)
    if (v.id_to_token_[i] != kSpecialNames[i])
      throw std::runtime_error("vocabulary specials corrupted");
  return v;
}

void Vocab::set_document_stats(std::vector<std::size_t> df, std::size_t sentence_count) {
  if (df.size() != id_to_token_.size())
    throw std::invalid_argument("df size does not match vocabulary");
  df_ = std::move(df);
  sentence_count_ = sentence_count;
}

}  // namespace pdfgraph::corpus
