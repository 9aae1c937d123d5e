#include "pdfgraph/pipeline/config.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

#include "pdfgraph/util/bytes.hpp"

namespace pdfgraph::pipeline {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument("unknown config key '" + key + "' in " + where);
  }
}

}  // namespace

Scheme scheme_from_name(const std::string& name) {
  if (name == "cbow") return Scheme::Cbow;
  if (name == "pvdm") return Scheme::Pvdm;
  if (name == "bert") return Scheme::Bert;
  throw std::invalid_argument("unknown embedding scheme '" + name + "'");
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Cbow: return "cbow";
    case Scheme::Pvdm: return "pvdm";
    case Scheme::Bert: return "bert";
  }
  return "?";
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text) {
  const json doc = json::parse(text);
  PipelineConfig cfg;
  reject_unknown(doc, {"seed", "scheme", "embedding", "gin", "attack"}, "config root");

  if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("scheme")) cfg.scheme = scheme_from_name(doc["scheme"].get<std::string>());

  if (doc.contains("embedding")) {
    const json& e = doc["embedding"];
    reject_unknown(e,
                   {"dim", "window", "neg_count", "lr", "epochs", "batch_size", "full_softmax",
                    "bert_hidden", "bert_layers", "bert_heads", "bert_intermediate", "bert_lr",
                    "bert_dropout", "bert_tie_mlm"},
                   "embedding");
    if (e.contains("dim")) cfg.dim = e["dim"].get<int>();
    if (e.contains("window")) cfg.window = e["window"].get<int>();
    if (e.contains("neg_count")) cfg.neg_count = e["neg_count"].get<int>();
    if (e.contains("lr")) cfg.lr = e["lr"].get<double>();
    if (e.contains("epochs")) cfg.epochs = e["epochs"].get<int>();
    if (e.contains("batch_size")) cfg.batch_size = e["batch_size"].get<int>();
    if (e.contains("full_softmax")) cfg.full_softmax = e["full_softmax"].get<bool>();
    if (e.contains("bert_hidden")) cfg.bert_hidden = e["bert_hidden"].get<int>();
    if (e.contains("bert_layers")) cfg.bert_layers = e["bert_layers"].get<int>();
    if (e.contains("bert_heads")) cfg.bert_heads = e["bert_heads"].get<int>();
    if (e.contains("bert_intermediate")) cfg.bert_intermediate = e["bert_intermediate"].get<int>();
    if (e.contains("bert_lr")) cfg.bert_lr = e["bert_lr"].get<double>();
    if (e.contains("bert_dropout")) cfg.bert_dropout = e["bert_dropout"].get<double>();
    if (e.contains("bert_tie_mlm")) cfg.bert_tie_mlm = e["bert_tie_mlm"].get<bool>();
  }

  if (doc.contains("gin")) {
    const json& g = doc["gin"];
    reject_unknown(g, {"hidden", "num_layers", "aggregation", "symmetrize", "lr", "epochs",
                       "batch_size", "dense_pair_cap"},
                   "gin");
    if (g.contains("hidden")) cfg.gin.hidden = g["hidden"].get<int>();
    if (g.contains("num_layers")) cfg.gin.num_layers = g["num_layers"].get<int>();
    if (g.contains("aggregation")) {
      const std::string a = g["aggregation"].get<std::string>();
      if (a != "sum" && a != "mean") throw std::invalid_argument("aggregation must be sum|mean");
      cfg.gin.aggregation = a == "sum" ? gin::Aggregation::Sum : gin::Aggregation::Mean;
    }
    if (g.contains("symmetrize")) cfg.gin.symmetrize = g["symmetrize"].get<bool>();
    if (g.contains("lr")) cfg.gin.lr = g["lr"].get<double>();
    if (g.contains("epochs")) cfg.gin.epochs = g["epochs"].get<int>();
    if (g.contains("batch_size")) cfg.gin.batch_size = g["batch_size"].get<int>();
    if (g.contains("dense_pair_cap")) cfg.gin.dense_pair_cap = g["dense_pair_cap"].get<int>();
  }

  if (doc.contains("attack")) {
    const json& a = doc["attack"];
    reject_unknown(a, {"max_edits", "max_queries", "population", "generations", "sigma", "top_k"},
                   "attack");
    if (a.contains("max_edits")) cfg.attack.max_edits = a["max_edits"].get<int>();
    if (a.contains("max_queries")) cfg.attack.max_queries = a["max_queries"].get<int>();
    if (a.contains("population")) cfg.attack.population = a["population"].get<int>();
    if (a.contains("generations")) cfg.attack.generations = a["generations"].get<int>();
    if (a.contains("sigma")) cfg.attack.sigma = a["sigma"].get<double>();
    if (a.contains("top_k")) cfg.attack.top_k = a["top_k"].get<int>();
  }

  if (cfg.dim <= 0 || cfg.epochs < 0 || cfg.batch_size <= 0 || cfg.window < 1)
    throw std::invalid_argument("embedding hyperparameters out of range");
  return cfg;
}

PipelineConfig PipelineConfig::from_file(const std::filesystem::path& path) {
  return from_json_text(read_file(path));
}

std::string PipelineConfig::to_json_text() const {
  json doc;
  doc["seed"] = seed;
  doc["scheme"] = scheme_name(scheme);
  doc["embedding"] = {{"dim", dim},
                      {"window", window},
                      {"neg_count", neg_count},
                      {"lr", lr},
                      {"epochs", epochs},
                      {"batch_size", batch_size},
                      {"full_softmax", full_softmax},
                      {"bert_hidden", bert_hidden},
                      {"bert_layers", bert_layers},
                      {"bert_heads", bert_heads},
                      {"bert_intermediate", bert_intermediate},
                      {"bert_lr", bert_lr},
                      {"bert_dropout", bert_dropout},
                      {"bert_tie_mlm", bert_tie_mlm}};
  doc["gin"] = {{"hidden", gin.hidden},
                {"num_layers", gin.num_layers},
                {"aggregation", gin.aggregation == gin::Aggregation::Sum ? "sum" : "mean"},
                {"symmetrize", gin.symmetrize},
                {"lr", gin.lr},
                {"epochs", gin.epochs},
                {"batch_size", gin.batch_size},
                {"dense_pair_cap", gin.dense_pair_cap}};
  doc["attack"] = {{"max_edits", attack.max_edits},
                   {"max_queries", attack.max_queries},
                   {"population", attack.population},
                   {"generations", attack.generations},
                   {"sigma", attack.sigma},
                   {"top_k", attack.top_k}};
  return doc.dump(2) + "\n";
}

std::uint64_t PipelineConfig::hash() const {
  const std::string text = to_json_text();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

embed::CbowConfig PipelineConfig::cbow_config() const {
  embed::CbowConfig c;
  c.dim = dim;
  c.window = window;
  c.neg_count = neg_count;
  c.lr = lr;
  c.epochs = epochs;
  c.batch_size = batch_size;
  c.full_softmax = full_softmax;
  c.seed = seed;
  return c;
}

embed::PvdmConfig PipelineConfig::pvdm_config() const {
  embed::PvdmConfig c;
  c.dim = dim;
  c.window = window;
  c.neg_count = neg_count;
  c.lr = lr;
  c.epochs = epochs;
  c.batch_size = batch_size;
  c.full_softmax = full_softmax;
  c.seed = seed;
  return c;
}

embed::BertConfig PipelineConfig::bert_config(int vocab_size) const {
  embed::BertConfig c;
  c.vocab_size = vocab_size;
  c.hidden = bert_hidden;
  c.num_layers = bert_layers;
  c.num_heads = bert_heads;
  c.intermediate = bert_intermediate;
  c.hidden_dropout = bert_dropout;
  c.attn_dropout = bert_dropout;
  c.tie_mlm = bert_tie_mlm;
  return c;
}

embed::BertTrainConfig PipelineConfig::bert_train_config() const {
  embed::BertTrainConfig c;
  c.epochs = epochs;
  c.batch_size = batch_size;
  c.lr = bert_lr;
  c.seed = seed;
  return c;
}

}  // namespace pdfgraph::pipeline
