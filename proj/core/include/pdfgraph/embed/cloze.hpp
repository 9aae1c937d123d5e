#pragma once

#include <vector>

#include "pdfgraph/embed/bert.hpp"
#include "pdfgraph/embed/cbow.hpp"
#include "pdfgraph/embed/pvdm.hpp"

namespace pdfgraph::embed {

// One uniformly chosen position per sentence is blanked; accuracy is the
// exact-match rate of the argmax prediction over non-special tokens.
// CBOW predicts from the window context, PV-DM from the TF-IDF paragraph
// proxy plus context, BERT from a [MASK] in place.

double cloze_cbow(const CbowModel& model, const std::vector<std::vector<TokenId>>& sentences,
                  Rng& rng);

double cloze_pvdm(const PvdmModel& model, const corpus::Vocab& vocab,
                  const std::vector<std::vector<TokenId>>& sentences, Rng& rng);

double cloze_bert(const TinyBert& model, const std::vector<std::vector<TokenId>>& sentences,
                  Rng& rng);

}  // namespace pdfgraph::embed
