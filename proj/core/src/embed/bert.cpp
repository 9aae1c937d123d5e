#include "pdfgraph/embed/bert.hpp"

#include <cmath>
#include <stdexcept>
#include "pdfgraph/nn/optim.hpp"

namespace pdfgraph::embed {

BertConfig BertConfig::paper_scale(int vocab) {
  BertConfig c;
  c.vocab_size = vocab;
  return c;
}

BertConfig BertConfig::desk_scale(int vocab) {
  BertConfig c;
  c.vocab_size = vocab;
  c.hidden = 64;
  c.num_layers = 2;
  c.num_heads = 4;
  c.intermediate = 38;  // keeps the paper's intermediate/hidden ratio
  return c;
}

EncoderLayer::EncoderLayer(const BertConfig& config, int index)
    : wq("enc" + std::to_string(index) + ".wq", config.hidden, config.hidden),
      wk("enc" + std::to_string(index) + ".wk", config.hidden, config.hidden),
      wv("enc" + std::to_string(index) + ".wv", config.hidden, config.hidden),
      wo("enc" + std::to_string(index) + ".wo", config.hidden, config.hidden),
      ff1("enc" + std::to_string(index) + ".ff1", config.hidden, config.intermediate),
      ff2("enc" + std::to_string(index) + ".ff2", config.intermediate, config.hidden),
      ln1("enc" + std::to_string(index) + ".ln1", config.hidden, config.layer_norm_eps),
      ln2("enc" + std::to_string(index) + ".ln2", config.hidden, config.layer_norm_eps),
      heads_(config.num_heads),
      attn_dropout_(config.attn_dropout),
      hidden_dropout_(config.hidden_dropout) {}

nn::ParamRefs EncoderLayer::params() {
  nn::ParamRefs out;
  for (auto* lin : {&wq, &wk, &wv, &wo, &ff1, &ff2})
    for (nn::Param* p : lin->params()) out.push_back(p);
  for (auto* ln : {&ln1, &ln2})
    for (nn::Param* p : ln->params()) out.push_back(p);
  return out;
}

nn::Matrix EncoderLayer::forward(const nn::Matrix& X, const std::vector<int>& attn_mask,
                                 bool train, Rng* rng, EncoderLayerCache* cache) const {
  const Eigen::Index n = X.rows();
  const Eigen::Index H = X.cols();
  const Eigen::Index dh = H / heads_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Rng fallback(0);
  Rng& r = rng ? *rng : fallback;
  const bool drop = train && rng != nullptr;

  const nn::Matrix Q = wq.forward(X, cache ? &cache->q : nullptr);
  const nn::Matrix K = wk.forward(X, cache ? &cache->k : nullptr);
  const nn::Matrix V = wv.forward(X, cache ? &cache->v : nullptr);

  if (cache) {
    cache->Q = Q;
    cache->K = K;
    cache->V = V;
    cache->probs.resize(static_cast<std::size_t>(heads_));
    cache->probs_dropped.resize(static_cast<std::size_t>(heads_));
    cache->attn_drop_mask.resize(static_cast<std::size_t>(heads_));
  }

  nn::Matrix O(n, H);
  for (int h = 0; h < heads_; ++h) {
    const auto Qh = Q.middleCols(h * dh, dh);
    const auto Kh = K.middleCols(h * dh, dh);
    const auto Vh = V.middleCols(h * dh, dh);
    nn::Matrix S = Qh * Kh.transpose() * scale;
    for (std::size_t j = 0; j < attn_mask.size(); ++j)
      if (!attn_mask[j]) S.col(static_cast<Eigen::Index>(j)).setConstant(-1e30);
    nn::Matrix P = nn::softmax_rows(S);
    nn::Matrix drop_mask;
    nn::Matrix Pd = nn::dropout(P, drop ? attn_dropout_ : 0.0, drop, r, &drop_mask);
    O.middleCols(h * dh, dh) = Pd * Vh;
    if (cache) {
      cache->probs[static_cast<std::size_t>(h)] = std::move(P);
      cache->probs_dropped[static_cast<std::size_t>(h)] = std::move(Pd);
      cache->attn_drop_mask[static_cast<std::size_t>(h)] = std::move(drop_mask);
    }
  }

  const nn::Matrix A = wo.forward(O, cache ? &cache->o : nullptr);
  nn::Matrix proj_mask;
  const nn::Matrix Ad = nn::dropout(A, drop ? hidden_dropout_ : 0.0, drop, r, &proj_mask);
  const nn::Matrix X1 = ln1.forward(X + Ad, cache ? &cache->ln1 : nullptr);

  const nn::Matrix F1 = ff1.forward(X1, cache ? &cache->f1 : nullptr);
  const nn::Matrix G = nn::gelu(F1);
  const nn::Matrix F2 = ff2.forward(G, cache ? &cache->f2 : nullptr);
  nn::Matrix ffn_mask;
  const nn::Matrix F2d = nn::dropout(F2, drop ? hidden_dropout_ : 0.0, drop, r, &ffn_mask);
  const nn::Matrix X2 = ln2.forward(X1 + F2d, cache ? &cache->ln2 : nullptr);

  if (cache) {
    cache->attn_proj_drop_mask = std::move(proj_mask);
    cache->ff1_out = F1;
    cache->gelu_out = G;
    cache->ffn_drop_mask = std::move(ffn_mask);
  }
  return X2;
}

nn::Matrix EncoderLayer::backward(const nn::Matrix& dY, const EncoderLayerCache& cache) {
  const Eigen::Index n = dY.rows();
  const Eigen::Index H = dY.cols();
  const Eigen::Index dh = H / heads_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  const nn::Matrix dSum2 = ln2.backward(dY, cache.ln2);
  const nn::Matrix dF2 = dSum2.cwiseProduct(cache.ffn_drop_mask);
  const nn::Matrix dG = ff2.backward(dF2, cache.f2);
  const nn::Matrix dF1 = nn::gelu_backward(cache.ff1_out, dG);
  const nn::Matrix dX1_ffn = ff1.backward(dF1, cache.f1);
  const nn::Matrix dX1 = dSum2 + dX1_ffn;

  const nn::Matrix dSum1 = ln1.backward(dX1, cache.ln1);
  const nn::Matrix dA = dSum1.cwiseProduct(cache.attn_proj_drop_mask);
  const nn::Matrix dO = wo.backward(dA, cache.o);

  nn::Matrix dQ = nn::Matrix::Zero(n, H);
  nn::Matrix dK = nn::Matrix::Zero(n, H);
  nn::Matrix dV = nn::Matrix::Zero(n, H);
  for (int h = 0; h < heads_; ++h) {
    const auto dOh = dO.middleCols(h * dh, dh);
    const auto Qh = cache.Q.middleCols(h * dh, dh);
    const auto Kh = cache.K.middleCols(h * dh, dh);
    const auto Vh = cache.V.middleCols(h * dh, dh);
    const nn::Matrix& P = cache.probs[static_cast<std::size_t>(h)];
    const nn::Matrix& Pd = cache.probs_dropped[static_cast<std::size_t>(h)];

    const nn::Matrix dPd = dOh * Vh.transpose();
    dV.middleCols(h * dh, dh) = Pd.transpose() * dOh;
    const nn::Matrix dP = dPd.cwiseProduct(cache.attn_drop_mask[static_cast<std::size_t>(h)]);

    nn::Matrix dS(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = dP.row(i).cwiseProduct(P.row(i)).sum();
      dS.row(i) = P.row(i).cwiseProduct(dP.row(i) - nn::Matrix::Constant(1, n, s));
    }
    dQ.middleCols(h * dh, dh) = dS * Kh * scale;
    dK.middleCols(h * dh, dh) = dS.transpose() * Qh * scale;
  }

  const nn::Matrix dXq = wq.backward(dQ, cache.q);
  const nn::Matrix dXk = wk.backward(dK, cache.k);
  const nn::Matrix dXv = wv.backward(dV, cache.v);
  return dSum1 + dXq + dXk + dXv;
}

TinyBert::TinyBert(BertConfig config, Rng& init_rng)
    : tok_table("bert.tok", config.vocab_size, config.hidden),
      pos_table("bert.pos", config.max_positions, config.hidden),
      seg_table("bert.seg", config.type_vocab, config.hidden),
      emb_ln("bert.emb_ln", config.hidden, config.layer_norm_eps),
      nop_head("bert.nop", config.hidden, 2),
      config_(config) {
  tok_table.init_normal(init_rng, config.initializer_range);
  pos_table.init_normal(init_rng, config.initializer_range);
  seg_table.init_normal(init_rng, config.initializer_range);
  encoder.reserve(static_cast<std::size_t>(config.num_layers));
  for (int l = 0; l < config.num_layers; ++l) encoder.emplace_back(config, l);
  for (auto& layer : encoder) {
    for (auto* lin : {&layer.wq, &layer.wk, &layer.wv, &layer.wo, &layer.ff1, &layer.ff2}) {
      lin->W.init_normal(init_rng, config.initializer_range);
      lin->b.init_constant(0.0);
    }
  }
  nop_head.W.init_normal(init_rng, config.initializer_range);
  nop_head.b.init_constant(0.0);
  if (!config.tie_mlm) {
    mlm_decoder = nn::Param("bert.mlm_decoder", config.vocab_size, config.hidden);
    mlm_decoder.init_normal(init_rng, config.initializer_range);
  }
}

nn::ParamRefs TinyBert::params() {
  nn::ParamRefs out{&tok_table, &pos_table, &seg_table};
  for (nn::Param* p : emb_ln.params()) out.push_back(p);
  for (auto& layer : encoder)
    for (nn::Param* p : layer.params()) out.push_back(p);
  for (nn::Param* p : nop_head.params()) out.push_back(p);
  if (!config_.tie_mlm) out.push_back(&mlm_decoder);
  return out;
}

BertOutput TinyBert::forward(const corpus::MlmInstance& instance,
                             const std::vector<int>& attn_mask, bool train, Rng* dropout_rng,
                             BertForwardCache* cache) const {
  const std::size_t n = instance.input_ids.size();
  if (n == 0) throw std::invalid_argument("empty instance");
  if (n > static_cast<std::size_t>(config_.max_positions))
    throw std::invalid_argument("sequence exceeds max positions");

  nn::Matrix E(static_cast<Eigen::Index>(n), config_.hidden);
  for (std::size_t i = 0; i < n; ++i) {
    E.row(static_cast<Eigen::Index>(i)) =
        tok_table.value.row(instance.input_ids[i]) +
        pos_table.value.row(static_cast<Eigen::Index>(i)) +
        seg_table.value.row(instance.segment_ids[i]);
  }

  Rng fallback(0);
  Rng& r = dropout_rng ? *dropout_rng : fallback;
  const bool drop = train && dropout_rng != nullptr;

  nn::Matrix H = emb_ln.forward(E, cache ? &cache->emb_ln : nullptr);
  nn::Matrix emb_mask;
  H = nn::dropout(H, drop ? config_.hidden_dropout : 0.0, drop, r, &emb_mask);

  if (cache) {
    cache->ids = instance.input_ids;
    cache->segments = instance.segment_ids;
    cache->emb_drop_mask = std::move(emb_mask);
    cache->layers.resize(encoder.size());
  }
  for (std::size_t l = 0; l < encoder.size(); ++l)
    H = encoder[l].forward(H, attn_mask, train, dropout_rng, cache ? &cache->layers[l] : nullptr);

  BertOutput out;
  out.last_hidden = H;

  const std::size_t m = instance.mask_positions.size();
  nn::Matrix Hm(static_cast<Eigen::Index>(m), config_.hidden);
  for (std::size_t k = 0; k < m; ++k)
    Hm.row(static_cast<Eigen::Index>(k)) =
        H.row(static_cast<Eigen::Index>(instance.mask_positions[k]));
  const nn::Matrix& decoder = config_.tie_mlm ? tok_table.value : mlm_decoder.value;
  out.mlm_logits = Hm * decoder.transpose();

  out.nop_logits = nop_head.forward(H.row(0), cache ? &cache->nop : nullptr);

  if (cache) {
    cache->last_hidden = H;
    cache->mlm_hidden = std::move(Hm);
  }
  return out;
}

double TinyBert::instance_loss(const corpus::MlmInstance& instance, bool train, Rng* dropout_rng,
                               double* mlm_part, double* nop_part) {
  const std::vector<int> attn_mask(instance.input_ids.size(), 1);
  BertForwardCache cache;
  const BertOutput out =
      forward(instance, attn_mask, train, dropout_rng, train ? &cache : nullptr);

  const std::size_t m = instance.mask_positions.size();
  double mlm_loss = 0.0;
  nn::Matrix dmlm;
  if (m > 0) {
    std::vector<int> targets;
    targets.reserve(m);
    for (corpus::TokenId t : instance.target_ids) targets.push_back(static_cast<int>(t));
    // Appendix-style sum over masked tokens of one instance.
    mlm_loss = nn::cross_entropy(out.mlm_logits, targets, train ? &dmlm : nullptr) *
               static_cast<double>(m);
    if (train) dmlm *= static_cast<double>(m);
  }

  nn::Matrix dnop;
  const double nop_loss =
      nn::cross_entropy(out.nop_logits, {instance.nop_label}, train ? &dnop : nullptr);

  if (mlm_part) *mlm_part = mlm_loss;
  if (nop_part) *nop_part = nop_loss;

  if (train) {
    const Eigen::Index n = out.last_hidden.rows();
    nn::Matrix dH = nn::Matrix::Zero(n, config_.hidden);

    const nn::Matrix dcls = nop_head.backward(dnop, cache.nop);
    dH.row(0) += dcls.row(0);

    if (m > 0) {
      nn::Matrix dHm;
      if (config_.tie_mlm) {
        tok_table.grad += dmlm.transpose() * cache.mlm_hidden;
        dHm = dmlm * tok_table.value;
      } else {
        mlm_decoder.grad += dmlm.transpose() * cache.mlm_hidden;
        dHm = dmlm * mlm_decoder.value;
      }
      for (std::size_t k = 0; k < m; ++k)
        dH.row(static_cast<Eigen::Index>(instance.mask_positions[k])) +=
            dHm.row(static_cast<Eigen::Index>(k));
    }

    for (std::size_t l = encoder.size(); l-- > 0;)
      dH = encoder[l].backward(dH, cache.layers[l]);

    dH = dH.cwiseProduct(cache.emb_drop_mask);
    const nn::Matrix dE = emb_ln.backward(dH, cache.emb_ln);
    for (Eigen::Index i = 0; i < dE.rows(); ++i) {
      tok_table.grad.row(cache.ids[static_cast<std::size_t>(i)]) += dE.row(i);
      pos_table.grad.row(i) += dE.row(i);
      seg_table.grad.row(cache.segments[static_cast<std::size_t>(i)]) += dE.row(i);
    }
  }
  return mlm_loss + nop_loss;
}

nn::Vector TinyBert::cls_embedding(const std::vector<corpus::TokenId>& sentence_ids) const {
  corpus::MlmInstance inst;
  inst.input_ids.push_back(corpus::kClsId);
  for (corpus::TokenId t : sentence_ids) inst.input_ids.push_back(t);
  if (inst.input_ids.size() > static_cast<std::size_t>(config_.max_positions))
    inst.input_ids.resize(static_cast<std::size_t>(config_.max_positions));
  inst.segment_ids.assign(inst.input_ids.size(), 0);
  const std::vector<int> attn_mask(inst.input_ids.size(), 1);
  const BertOutput out = forward(inst, attn_mask, false, nullptr, nullptr);
  return out.last_hidden.row(0).transpose();
}

Checkpoint TinyBert::to_checkpoint(const corpus::Vocab& vocab) const {
  Checkpoint ckpt;
  ckpt.scheme = "bert";
  ckpt.metadata["vocab_size"] = std::to_string(config_.vocab_size);
  ckpt.metadata["hidden"] = std::to_string(config_.hidden);
  ckpt.metadata["num_layers"] = std::to_string(config_.num_layers);
  ckpt.metadata["num_heads"] = std::to_string(config_.num_heads);
  ckpt.metadata["intermediate"] = std::to_string(config_.intermediate);
  ckpt.metadata["max_positions"] = std::to_string(config_.max_positions);
  ckpt.metadata["type_vocab"] = std::to_string(config_.type_vocab);
  ckpt.metadata["hidden_dropout"] = std::to_string(config_.hidden_dropout);
  ckpt.metadata["attn_dropout"] = std::to_string(config_.attn_dropout);
  ckpt.metadata["layer_norm_eps"] = std::to_string(config_.layer_norm_eps);
  ckpt.metadata["tie_mlm"] = config_.tie_mlm ? "1" : "0";
  ckpt.metadata["optimizer"] = "adam lr 1e-4 warmup 0.05";
  ckpt.metadata["vocab_hash"] = std::to_string(vocab.content_hash());
  ckpt.metadata["sentence_count"] = std::to_string(vocab.sentence_count());
  ckpt.metadata["idf_formula"] = "ln((1+N)/(1+df))+1";

  TinyBert& self = const_cast<TinyBert&>(*this);
  for (nn::Param* p : self.params()) ckpt.add_matrix(p->name, p->value);
  nn::Matrix df(static_cast<Eigen::Index>(vocab.size()), 1);
  for (std::size_t i = 0; i < vocab.size(); ++i)
    df(static_cast<Eigen::Index>(i), 0) = static_cast<double>(vocab.df()[i]);
  ckpt.add_matrix("corpus.df", df);
  return ckpt;
}

TinyBert TinyBert::from_checkpoint(const Checkpoint& ckpt) {
  if (ckpt.scheme != "bert") throw std::runtime_error("checkpoint scheme is not bert");
  BertConfig config;
  config.vocab_size = std::stoi(ckpt.meta("vocab_size"));
  config.hidden = std::stoi(ckpt.meta("hidden"));
  config.num_layers = std::stoi(ckpt.meta("num_layers"));
  config.num_heads = std::stoi(ckpt.meta("num_heads"));
  config.intermediate = std::stoi(ckpt.meta("intermediate"));
  config.max_positions = std::stoi(ckpt.meta("max_positions"));
  config.type_vocab = std::stoi(ckpt.meta("type_vocab"));
  config.hidden_dropout = std::stod(ckpt.meta("hidden_dropout"));
  config.attn_dropout = std::stod(ckpt.meta("attn_dropout"));
  config.layer_norm_eps = std::stod(ckpt.meta("layer_norm_eps"));
  config.tie_mlm = ckpt.meta("tie_mlm") == "1";
  Rng rng(0);
  TinyBert model(config, rng);
  for (nn::Param* p : model.params()) {
    p->value = ckpt.tensor(p->name).to_matrix();
    p->grad = nn::Matrix::Zero(p->value.rows(), p->value.cols());
  }
  return model;
}

std::vector<corpus::MlmInstance> make_bert_instances(const std::vector<GraphCorpus>& docs,
                                                     const corpus::Vocab& vocab, Rng& rng) {
  std::vector<corpus::MlmInstance> out;
  for (const auto& doc : docs) {
    if (doc.org.nodes.size() < 2) continue;
    std::vector<corpus::NopPair> pairs;
    try {
      pairs = corpus::sample_nop_pairs(doc.org, rng);
    } catch (const std::invalid_argument&) {
      continue;  // degenerate graph, nothing to pair
    }
    for (const auto& pair : pairs) {
      const auto a = doc.sentences.find(pair.a);
      const auto b = doc.sentences.find(pair.b);
      static const std::vector<corpus::TokenId> kEmpty;
      corpus::MlmInstance inst = corpus::make_pair_instance(
          a == doc.sentences.end() ? kEmpty : a->second,
          b == doc.sentences.end() ? kEmpty : b->second, pair.label);
      corpus::mask_mlm(inst, vocab, rng);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

TinyBert train_bert(std::vector<corpus::MlmInstance> instances, const BertConfig& config,
                    const BertTrainConfig& train_config, BertTrainLog* log) {
  if (instances.empty()) throw std::invalid_argument("no training instances");
  Rng rng(train_config.seed);
  TinyBert model(config, rng);

  const std::size_t steps_per_epoch =
      (instances.size() + static_cast<std::size_t>(train_config.batch_size) - 1) /
      static_cast<std::size_t>(train_config.batch_size);
  const std::size_t total_steps = steps_per_epoch * static_cast<std::size_t>(train_config.epochs);
  const std::size_t warmup =
      static_cast<std::size_t>(train_config.warmup_fraction * static_cast<double>(total_steps));
  nn::Adam adam(train_config.lr, 0.9, 0.999, 1e-8, warmup);
  const auto param_refs = model.params();

  for (int epoch = 0; epoch < train_config.epochs; ++epoch) {
    rng.shuffle(instances);
    double sum_loss = 0.0, sum_mlm = 0.0, sum_nop = 0.0;
    std::size_t in_batch = 0;
    nn::zero_grads(param_refs);
    for (const auto& inst : instances) {
      double mlm = 0.0, nop = 0.0;
      sum_loss += model.instance_loss(inst, true, &rng, &mlm, &nop);
      sum_mlm += mlm;
      sum_nop += nop;
      if (++in_batch == static_cast<std::size_t>(train_config.batch_size)) {
        adam.step(param_refs);
        nn::zero_grads(param_refs);
        in_batch = 0;
      }
    }
    if (in_batch > 0) {
      adam.step(param_refs);
      nn::zero_grads(param_refs);
    }
    const double n = static_cast<double>(instances.size());
    if (log) {
      log->epoch_loss.push_back(sum_loss / n);
      log->epoch_mlm.push_back(sum_mlm / n);
      log->epoch_nop.push_back(sum_nop / n);
    }
  }
  return model;
}

}  // namespace pdfgraph::embed
