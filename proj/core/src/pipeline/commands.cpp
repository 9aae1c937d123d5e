#include "pdfgraph/pipeline/commands.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <variant>

#include "pdfgraph/attack/genetic.hpp"
#include "pdfgraph/attack/grad_argmax.hpp"
#include "pdfgraph/attack/random_noise.hpp"
#include "pdfgraph/corpus/sampling.hpp"
#include "pdfgraph/corpus/token.hpp"
#include "pdfgraph/embed/cloze.hpp"
#include "pdfgraph/embed/embedder.hpp"
#include "pdfgraph/gin/metrics.hpp"
#include "pdfgraph/ir/convert.hpp"
#include "pdfgraph/ir/text.hpp"
#include "pdfgraph/util/bytes.hpp"

namespace pdfgraph::pipeline {
namespace {

namespace fs = std::filesystem;

struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedDoc {
  pdf::RawDocument doc;
  ir::IrProgram program;
  graph::Org org;
};

ParsedDoc load_document(const fs::path& path) {
  ParsedDoc out;
  out.doc = pdf::parse_document(read_file(path));
  out.program = ir::convert_document(out.doc);
  out.org = graph::build_org(out.program);
  return out;
}

void write_parse_outputs(const fs::path& outdir, const std::string& stem, const ParsedDoc& d) {
  write_file(outdir / (stem + ".ir"), ir::emit_ir_text(d.program));
  std::string diag;
  for (const auto& ev : d.doc.diagnostics) {
    diag += ev.report_line();
    diag += "\n";
  }
  write_file(outdir / (stem + ".diag"), diag);
  for (const auto& [id, blob] : d.program.stream_blobs)
    write_file(outdir / stem / (id.str() + ".bin"), blob);
}

corpus::Vocab vocab_from_checkpoint(const embed::Checkpoint& ckpt) {
  corpus::Vocab vocab = corpus::Vocab::from_text(ckpt.meta("vocab_text"));
  const nn::Matrix df = ckpt.tensor("corpus.df").to_matrix();
  std::vector<std::size_t> counts(static_cast<std::size_t>(df.rows()));
  for (Eigen::Index i = 0; i < df.rows(); ++i)
    counts[static_cast<std::size_t>(i)] = static_cast<std::size_t>(df(i, 0));
  vocab.set_document_stats(std::move(counts), std::stoull(ckpt.meta("sentence_count")));
  return vocab;
}

// Owns whichever trained scheme backs the embedder.
struct EmbedderBundle {
  corpus::Vocab vocab;
  std::variant<embed::CbowModel, embed::PvdmModel, embed::TinyBert> model;
  std::unique_ptr<embed::ObjectEmbedder> embedder;
  std::string scheme;
  std::string vocab_hash;

  static EmbedderBundle load(const fs::path& path) {
    const embed::Checkpoint ckpt = embed::Checkpoint::load(path);
    EmbedderBundle bundle;
    bundle.scheme = ckpt.scheme;
    bundle.vocab_hash = ckpt.meta("vocab_hash");
    bundle.vocab = vocab_from_checkpoint(ckpt);
    if (ckpt.scheme == "cbow") {
      bundle.model = embed::CbowModel::from_checkpoint(ckpt);
      bundle.embedder = std::make_unique<embed::CbowEmbedder>(
          std::get<embed::CbowModel>(bundle.model), bundle.vocab);
    } else if (ckpt.scheme == "pvdm") {
      bundle.model = embed::PvdmModel::from_checkpoint(ckpt);
      bundle.embedder = std::make_unique<embed::PvdmEmbedder>(
          std::get<embed::PvdmModel>(bundle.model), bundle.vocab);
    } else if (ckpt.scheme == "bert") {
      bundle.model = embed::TinyBert::from_checkpoint(ckpt);
      bundle.embedder = std::make_unique<embed::BertEmbedder>(
          std::get<embed::TinyBert>(bundle.model));
    } else {
      throw MismatchError("checkpoint scheme '" + ckpt.scheme + "' is not an embedding scheme");
    }
    return bundle;
  }
};

gin::Aorg aorg_for(const graph::Org& org, const EmbedderBundle& bundle,
                   std::optional<int> label) {
  return gin::build_aorg(org, *bundle.embedder, bundle.vocab, label);
}

void check_pair(const embed::Checkpoint& gin_ckpt, const EmbedderBundle& bundle) {
  if (gin_ckpt.meta("vocab_hash") != bundle.vocab_hash)
    throw MismatchError("classifier and embedding checkpoints were built from different vocabularies");
  if (std::stoi(gin_ckpt.meta("input_dim")) != static_cast<int>(bundle.embedder->dim()))
    throw MismatchError("classifier input dim does not match embedding dim");
}

int map_exception(const std::exception& e, std::ostream& log) {
  log << "error: " << e.what() << "\n";
  const std::string what = e.what();
  if (dynamic_cast<const MismatchError*>(&e)) return kExitMismatch;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitUsage;
  if (what.find("cannot open") != std::string::npos ||
      what.find("cannot write") != std::string::npos ||
      what.find("no such input") != std::string::npos)
    return kExitIo;
  return kExitUsage;
}

std::string sample_stem(const fs::path& p) { return p.stem().string(); }

}  // namespace

int cmd_parse(const fs::path& input, const fs::path& outdir, std::ostream& log) {
  try {
    const DatasetManifest manifest = DatasetManifest::from_path_unlabeled(input);
    for (const auto& entry : manifest.entries) {
      const ParsedDoc d = load_document(entry.path);
      write_parse_outputs(outdir, sample_stem(entry.path), d);
      log << entry.path.string() << "\tobjects\t" << d.doc.objects.size() << "\trepairs\t"
          << d.doc.diagnostics.size() << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, log);
  }
}

int cmd_graph(const fs::path& ir_input, const fs::path& outdir, std::ostream& log) {
  try {
    std::vector<fs::path> inputs;
    if (fs::is_directory(ir_input)) {
      for (const auto& e : fs::directory_iterator(ir_input))
        if (e.is_regular_file() && e.path().extension() == ".ir") inputs.push_back(e.path());
      std::sort(inputs.begin(), inputs.end());
    } else if (fs::exists(ir_input)) {
      inputs.push_back(ir_input);
    } else {
      throw std::runtime_error("no such input: " + ir_input.string());
    }
    for (const auto& path : inputs) {
      const ir::IrProgram program = ir::parse_ir_text(read_file(path));
      const graph::Org org = graph::build_org(program);
      write_file(outdir / (sample_stem(path) + ".graph.json"), org.to_json());
      log << path.string() << "\tnodes\t" << org.nodes.size() << "\tedges\t" << org.edges.size()
          << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, log);
  }
}

int cmd_pretrain(const DatasetManifest& manifest, const PipelineConfig& config,
                 const fs::path& outdir, std::ostream& log) {
  try {
    if (manifest.entries.empty()) throw std::invalid_argument("empty dataset");

    // Tokenize every document, then split documents 7:2:1.
    std::vector<std::vector<corpus::Sentence>> doc_sentences;
    std::vector<graph::Org> doc_orgs;
    for (const auto& entry : manifest.entries) {
      const ParsedDoc d = load_document(entry.path);
      doc_sentences.push_back(corpus::sentences_from(d.program));
      doc_orgs.push_back(d.org);
    }
    const auto splits = corpus::split_indices(doc_sentences.size(), {0.7, 0.2, 0.1}, config.seed);
    const auto& train_docs = splits[0];
    const auto& valid_docs = splits[2];

    std::vector<corpus::Sentence> train_sentences;
    for (std::size_t i : train_docs)
      train_sentences.insert(train_sentences.end(), doc_sentences[i].begin(),
                             doc_sentences[i].end());
    if (train_sentences.empty()) throw std::invalid_argument("training split has no sentences");
    const corpus::Vocab vocab = corpus::Vocab::build(train_sentences, 1);
    log << "vocab\t" << vocab.size() << "\n";

    std::vector<std::vector<corpus::TokenId>> train_ids;
    train_ids.reserve(train_sentences.size());
    for (const auto& s : train_sentences) train_ids.push_back(vocab.encode(s));

    std::vector<std::vector<corpus::TokenId>> valid_ids;
    for (std::size_t i : valid_docs)
      for (const auto& s : doc_sentences[i]) valid_ids.push_back(vocab.encode(s));

    embed::Checkpoint ckpt;
    double cloze = 0.0;
    Rng cloze_rng(config.seed + 17);
    if (config.scheme == Scheme::Cbow) {
      embed::TrainLog tl;
      embed::CbowModel model = embed::train_cbow(train_ids, vocab, config.cbow_config(), &tl);
      for (std::size_t e = 0; e < tl.epoch_loss.size(); ++e)
        log << "epoch\t" << e << "\tloss\t" << tl.epoch_loss[e] << "\n";
      cloze = embed::cloze_cbow(model, valid_ids, cloze_rng);
      ckpt = model.to_checkpoint(vocab);
    } else if (config.scheme == Scheme::Pvdm) {
      embed::TrainLog tl;
      embed::PvdmModel model = embed::train_pvdm(train_ids, vocab, config.pvdm_config(), &tl);
      for (std::size_t e = 0; e < tl.epoch_loss.size(); ++e)
        log << "epoch\t" << e << "\tloss\t" << tl.epoch_loss[e] << "\n";
      cloze = embed::cloze_pvdm(model, vocab, valid_ids, cloze_rng);
      ckpt = model.to_checkpoint(vocab);
    } else {
      std::vector<embed::GraphCorpus> train_graphs;
      for (std::size_t i : train_docs) {
        embed::GraphCorpus gc;
        gc.org = doc_orgs[i];
        for (const auto& s : doc_sentences[i]) gc.sentences[s.object] = vocab.encode(s);
        train_graphs.push_back(std::move(gc));
      }
      Rng pair_rng(config.seed + 5);
      auto instances = embed::make_bert_instances(train_graphs, vocab, pair_rng);
      embed::BertTrainLog tl;
      embed::TinyBert model = embed::train_bert(std::move(instances),
                                                config.bert_config(static_cast<int>(vocab.size())),
                                                config.bert_train_config(), &tl);
      for (std::size_t e = 0; e < tl.epoch_loss.size(); ++e)
        log << "epoch\t" << e << "\tloss\t" << tl.epoch_loss[e] << "\tmlm\t" << tl.epoch_mlm[e]
            << "\tnop\t" << tl.epoch_nop[e] << "\n";
      cloze = embed::cloze_bert(model, valid_ids, cloze_rng);
      ckpt = model.to_checkpoint(vocab);
    }
    log << "cloze\t" << cloze << "\n";

    ckpt.metadata["vocab_text"] = vocab.to_text();
    ckpt.metadata["config_hash"] = std::to_string(config.hash());
    write_file(outdir / "vocab.txt", vocab.to_text());
    ckpt.save(outdir / (scheme_name(config.scheme) + ".ckpt"));

    std::ostringstream train_log;
    train_log << "cloze\t" << cloze << "\n";
    write_file(outdir / "pretrain.log", train_log.str());
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, log);
  }
}

int cmd_train(const DatasetManifest& manifest, const fs::path& embed_ckpt,
              const PipelineConfig& config, bool dnn_baseline, const fs::path& outdir,
              std::ostream& log) {
  try {
    const EmbedderBundle bundle = EmbedderBundle::load(embed_ckpt);

    std::vector<gin::Aorg> samples;
    for (const auto& entry : manifest.entries) {
      if (!entry.label) throw std::invalid_argument("training requires labeled samples");
      const ParsedDoc d = load_document(entry.path);
      samples.push_back(aorg_for(d.org, bundle, entry.label));
    }
    const auto splits = corpus::split_indices(samples.size(), {0.7, 0.3}, config.seed);

    std::vector<gin::Aorg> train_set, test_set;
    for (std::size_t i : splits[0]) train_set.push_back(samples[i]);
    for (std::size_t i : splits[1]) test_set.push_back(samples[i]);
    if (test_set.empty()) test_set = train_set;

    std::vector<int> truth, predicted;
    embed::Checkpoint ckpt;
    if (dnn_baseline) {
      gin::DnnConfig dc = config.dnn;
      dc.input_dim = static_cast<int>(bundle.embedder->dim());
      dc.seed = config.seed;
      Rng rng(config.seed);
      gin::DnnBaseline model(dc, rng);
      const gin::TrainHistory history = gin::train_dnn(model, train_set, dc);
      for (std::size_t e = 0; e < history.epoch_loss.size(); ++e)
        log << "epoch\t" << e << "\tloss\t" << history.epoch_loss[e] << "\tacc\t"
            << history.epoch_accuracy[e] << "\n";
      for (const auto& s : test_set) {
        truth.push_back(*s.label);
        predicted.push_back(model.classify(s).first);
      }
      ckpt = model.to_checkpoint();
    } else {
      gin::GinConfig gc = config.gin;
      gc.input_dim = static_cast<int>(bundle.embedder->dim());
      gc.seed = config.seed;
      Rng rng(config.seed);
      gin::GinModel model(gc, rng);
      const gin::TrainHistory history = gin::train_gin(model, train_set, gc);
      for (std::size_t e = 0; e < history.epoch_loss.size(); ++e)
        log << "epoch\t" << e << "\tloss\t" << history.epoch_loss[e] << "\tacc\t"
            << history.epoch_accuracy[e] << "\n";
      for (const auto& s : test_set) {
        truth.push_back(*s.label);
        predicted.push_back(model.classify(s).first);
      }
      ckpt = model.to_checkpoint();
    }

    const gin::Metrics metrics = gin::compute_metrics(truth, predicted);
    log << "test\t" << metrics.summary() << "\n";

    ckpt.metadata["vocab_hash"] = bundle.vocab_hash;
    ckpt.metadata["embed_scheme"] = bundle.scheme;
    ckpt.metadata["config_hash"] = std::to_string(config.hash());
    ckpt.save(outdir / (dnn_baseline ? "dnn.ckpt" : "gin.ckpt"));
    write_file(outdir / "metrics.txt", metrics.summary() + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, log);
  }
}

int cmd_classify(const fs::path& input, const fs::path& embed_ckpt, const fs::path& gin_ckpt,
                 const fs::path& out_csv, std::ostream& log) {
  try {
    const EmbedderBundle bundle = EmbedderBundle::load(embed_ckpt);
    const embed::Checkpoint gc = embed::Checkpoint::load(gin_ckpt);
    check_pair(gc, bundle);

    std::optional<gin::DnnBaseline> dnn;
    std::optional<gin::GinModel> ginm;
    if (gc.scheme == "dnn") {
      dnn = gin::DnnBaseline::from_checkpoint(gc);
    } else {
      ginm = gin::GinModel::from_checkpoint(gc);
    }

    std::string csv = "path,label,confidence_malicious\n";
    const DatasetManifest manifest = DatasetManifest::from_path_unlabeled(input);
    for (const auto& entry : manifest.entries) {
      const ParsedDoc d = load_document(entry.path);
      const gin::Aorg aorg = aorg_for(d.org, bundle, std::nullopt);
      const auto [label, probs] = dnn ? dnn->classify(aorg) : ginm->classify(aorg);
      const double conf_malicious = probs[1];
      std::ostringstream row;
      row << entry.path.string() << "," << (label == 1 ? "malicious" : "benign") << ","
          << std::setprecision(6) << std::fixed << conf_malicious;
      csv += row.str() + "\n";
      log << row.str() << "\n";
    }
    if (!out_csv.empty()) write_file(out_csv, csv);
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, log);
  }
}

int cmd_attack(const std::string& method, const DatasetManifest& manifest,
               const fs::path& embed_ckpt, const fs::path& gin_ckpt,
               const PipelineConfig& config, const std::vector<int>& budgets,
               const fs::path& outdir, std::ostream& log) {
  try {
    if (method != "gradargmax" && method != "genetic" && method != "randomnoise")
      throw std::invalid_argument("attack method must be gradargmax|genetic|randomnoise");
    const EmbedderBundle bundle = EmbedderBundle::load(embed_ckpt);
    const embed::Checkpoint gc = embed::Checkpoint::load(gin_ckpt);
    check_pair(gc, bundle);
    if (gc.scheme != "gin")
      throw MismatchError("feature-space attacks target the graph classifier checkpoint");
    gin::GinModel model = gin::GinModel::from_checkpoint(gc);

    std::vector<gin::Aorg> samples;
    std::vector<std::string> stems;
    for (const auto& entry : manifest.entries) {
      if (!entry.label) throw std::invalid_argument("attack evaluation requires labels");
      const ParsedDoc d = load_document(entry.path);
      samples.push_back(aorg_for(d.org, bundle, entry.label));
      stems.push_back(sample_stem(entry.path));
    }

    std::vector<int> sweep = budgets;
    if (sweep.empty()) sweep.push_back(config.attack.max_edits);

    std::string summary = "budget,tra,mean_rpr\n";
    for (int budget_edits : sweep) {
      attack::AttackBudget budget;
      budget.max_edits = budget_edits;
      budget.max_queries = config.attack.max_queries;

      std::vector<attack::AttackReport> reports;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        Rng rng(config.seed * 1000003 + i);
        attack::AttackReport report;
        if (method == "gradargmax") {
          report = attack::grad_argmax_attack(model, samples[i], budget).report;
        } else if (method == "genetic") {
          attack::GeneticConfig gcfg;
          gcfg.population = config.attack.population;
          gcfg.generations = config.attack.generations;
          report = attack::genetic_attack(model, samples[i], budget, gcfg, rng);
        } else {
          attack::RandomNoiseConfig ncfg;
          ncfg.sigma = config.attack.sigma;
          ncfg.top_k = config.attack.top_k;
          report = attack::random_noise_attack(model, samples[i], ncfg, budget, rng);
        }
        report.sample_id = stems[i];
        write_file(outdir / ("budget_" + std::to_string(budget_edits)) / (stems[i] + ".attack"),
                   report.to_text());
        reports.push_back(std::move(report));
      }
      const double tra = attack::compute_tra(reports);
      double mean_rpr = 0.0;
      for (const auto& r : reports) mean_rpr += r.rpr;
      mean_rpr /= static_cast<double>(reports.size());
      std::ostringstream row;
      row << budget_edits << "," << tra << "," << mean_rpr;
      summary += row.str() + "\n";
      log << method << "\t" << row.str() << "\n";
    }
    write_file(outdir / (method + "_summary.csv"), summary);
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, log);
  }
}

int cmd_eval(const DatasetManifest& manifest, const fs::path& embed_ckpt,
             const fs::path& gin_ckpt, const fs::path& outdir, std::ostream& log) {
  try {
    const EmbedderBundle bundle = EmbedderBundle::load(embed_ckpt);
    const embed::Checkpoint gc = embed::Checkpoint::load(gin_ckpt);
    check_pair(gc, bundle);

    std::optional<gin::DnnBaseline> dnn;
    std::optional<gin::GinModel> ginm;
    if (gc.scheme == "dnn") {
      dnn = gin::DnnBaseline::from_checkpoint(gc);
    } else {
      ginm = gin::GinModel::from_checkpoint(gc);
    }

    std::vector<int> truth, predicted;
    for (const auto& entry : manifest.entries) {
      if (!entry.label) throw std::invalid_argument("eval requires labeled samples");
      const ParsedDoc d = load_document(entry.path);
      const gin::Aorg aorg = aorg_for(d.org, bundle, entry.label);
      truth.push_back(*entry.label);
      predicted.push_back(dnn ? dnn->classify(aorg).first : ginm->classify(aorg).first);
    }
    const gin::Metrics metrics = gin::compute_metrics(truth, predicted);
    log << metrics.summary() << "\n";
    if (!outdir.empty()) write_file(outdir / "eval_metrics.txt", metrics.summary() + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(e, log);
  }
}

}  // namespace pdfgraph::pipeline
