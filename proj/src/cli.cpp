#include "wsd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "wsd/cluster.hpp"
#include "wsd/corpus.hpp"
#include "wsd/errors.hpp"
#include "wsd/eval.hpp"
#include "wsd/formats.hpp"
#include "wsd/learner.hpp"
#include "wsd/lexicon.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace wsd {

namespace {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

// Accumulates the reproducibility record for one subcommand run.
class Manifest {
 public:
  Manifest(std::string subcommand, const std::vector<std::string>& args) {
    doc_["toolkit"] = "wsd";
    doc_["version"] = kToolkitVersion;
    doc_["subcommand"] = std::move(subcommand);
    doc_["argv"] = json(std::vector<std::string>(args.begin() + 1, args.end()));
    doc_["config"] = json::object();
    doc_["inputs"] = json::object();
    doc_["outputs"] = json::array();
  }

  template <typename T>
  void set(const std::string& key, T&& value) {
    doc_["config"][key] = std::forward<T>(value);
  }
  void input(const std::string& path) { doc_["inputs"][path] = file_sha256(path); }
  void output(const fs::path& path) { doc_["outputs"].push_back(path.filename().string()); }

  // Stable id derived from configuration and input digests.
  std::string derived_run_id() const {
    json key{{"subcommand", doc_["subcommand"]}, {"config", doc_["config"]},
             {"inputs", doc_["inputs"]}};
    return sha256_hex(key.dump()).substr(0, 12);
  }

  void write(const fs::path& dir) {
    const auto path = dir / "manifest.json";
    auto out = open_output(path);
    out << doc_.dump(2) << '\n';
    check_written(out, path);
  }

 private:
  json doc_;
};

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  return fs::path(dir);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& part : split(s, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::vector<Document> load_corpus(const std::string& path, const std::string& format,
                                  std::size_t min_line_words) {
  auto in = open_input(path);
  if (format == "raw") return parse_raw_corpus(in, min_line_words);
  if (format == "tagged") return parse_tagged_corpus(in);
  throw ContractError("unknown format '" + format + "'");
}

ContextsFile load_contexts(const std::string& path) {
  auto in = open_input(path);
  return read_contexts(in);
}

Lexicon load_lexicon(const std::string& path) {
  auto in = open_input(path);
  return read_lexicon(in);
}

IdMap load_id_map(const std::string& path) {
  auto in = open_input(path);
  return read_id_map(in);
}

SenseInventory inventory_for(const ContextsFile& contexts, const std::string& senses_flag) {
  auto senses = senses_flag.empty() ? contexts.senses : split_list(senses_flag);
  if (senses.empty())
    throw ContractError("no senses given: pass --senses or ingest with --senses");
  return SenseInventory(contexts.target, std::move(senses));
}

template <typename Fn>
void write_file(const fs::path& path, Manifest& manifest, Fn&& body) {
  auto out = open_output(path);
  body(out);
  check_written(out, path);
  manifest.output(path);
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
  std::string input;
  std::string format = "tagged";
  std::string target;
  std::string senses;
  std::size_t min_line_words = 10;
  std::string content_prefixes = "N,VM,AQ";
  bool no_content_filter = false;
  bool pseudoword_mode = false;
  std::int64_t min_lexicon_count = 0;  // 0: mode default
  std::string exclude_ids;
  std::string out_dir;
};

int cmd_ingest(const IngestOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  Manifest manifest("ingest", args);
  const std::int64_t bound =
      o.min_lexicon_count > 0 ? o.min_lexicon_count : (o.pseudoword_mode ? 30 : 10);
  const auto prefixes = split_list(o.content_prefixes);

  auto docs = load_corpus(o.input, o.format, o.min_line_words);
  manifest.input(o.input);
  if (!o.no_content_filter)
    for (auto& d : docs) d = filter_content_words(d, prefixes);

  auto contexts = extract_contexts(docs, o.target);
  if (!o.exclude_ids.empty()) {
    auto in = open_input(o.exclude_ids);
    const auto ids = read_id_list(in);
    manifest.input(o.exclude_ids);
    const std::set<ContextId> drop(ids.begin(), ids.end());
    std::erase_if(contexts, [&](const Context& c) { return drop.contains(c.id); });
  }
  const auto lexicon = build_lexicon(contexts, bound);

  manifest.set("format", o.format);
  manifest.set("target", o.target);
  manifest.set("senses", split_list(o.senses));
  manifest.set("min_line_words", o.min_line_words);
  manifest.set("content_filter", !o.no_content_filter);
  manifest.set("content_prefixes", prefixes);
  manifest.set("raw_tokens_bypass_filter", o.format == "raw");
  manifest.set("pseudoword_mode", o.pseudoword_mode);
  manifest.set("min_lexicon_count", bound);

  const auto dir = prepare_out_dir(o.out_dir);
  write_file(dir / "contexts.tsv", manifest, [&](std::ostream& s) {
    write_contexts(s, ContextsFile{o.target, split_list(o.senses), contexts});
  });
  write_file(dir / "lexicon.tsv", manifest, [&](std::ostream& s) { write_lexicon(s, lexicon); });
  manifest.write(dir);

  out << "target " << o.target << ": " << contexts.size() << " contexts, lexicon size "
      << lexicon.size() << " (min_context_count=" << bound << ")\n";
  return kExitOk;
}

// ------------------------------------------------------------ pseudoword

struct PseudowordOptions {
  std::string input;
  std::string format = "raw";
  std::size_t min_line_words = 10;
  PseudoWordSpec spec;
  std::string out_dir;
};

int cmd_pseudoword(const PseudowordOptions& o, const std::vector<std::string>& args,
                   std::ostream& out, std::ostream& err) {
  Manifest manifest("pseudoword", args);
  o.spec.validate();
  const auto docs = load_corpus(o.input, o.format, o.min_line_words);
  manifest.input(o.input);
  const auto result = make_pseudoword_corpus(docs, o.spec);

  manifest.set("format", o.format);
  manifest.set("min_line_words", o.min_line_words);
  manifest.set("word_a", o.spec.word_a);
  manifest.set("word_b", o.spec.word_b);
  manifest.set("pseudo", o.spec.pseudo);

  const auto dir = prepare_out_dir(o.out_dir);
  write_file(dir / "corpus.vrt", manifest,
             [&](std::ostream& s) { write_tagged_corpus(s, result.docs); });
  write_file(dir / "gold.tsv", manifest, [&](std::ostream& s) { write_id_map(s, result.gold); });
  write_file(dir / "ambiguous.tsv", manifest, [&](std::ostream& s) {
    for (auto id : result.ambiguous) s << id << '\n';
  });
  manifest.write(dir);

  if (result.gold.empty())
    err << "warning: neither '" << o.spec.word_a << "' nor '" << o.spec.word_b
        << "' occurs in the corpus; gold file is empty\n";
  std::int64_t a = 0;
  for (const auto& [_, lemma] : result.gold) a += lemma == o.spec.word_a;
  out << "pseudo-word " << o.spec.pseudo << ": " << result.gold.size() << " gold contexts ("
      << o.spec.word_a << "=" << a << ", " << o.spec.word_b << "="
      << static_cast<std::int64_t>(result.gold.size()) - a << "), " << result.ambiguous.size()
      << " ambiguous\n";
  return kExitOk;
}

// ------------------------------------------------------------ seed/train

struct SeedingOptions {
  std::string contexts;
  std::string senses;
  std::string gold;
  std::string seeds;
  int seeds_per_sense = 2;
  std::string seed_selection = "corpus_order";
  std::uint64_t rng_seed = 0;
};

// Applies seeds from a seed file or from gold; records the choice.
void apply_seeding(const SeedingOptions& o, std::vector<Context>& contexts,
                   const SenseInventory& inventory, const TrainerConfig& config,
                   Manifest& manifest) {
  if (!o.seeds.empty() && !o.gold.empty())
    throw ContractError("pass either --seeds or --gold, not both");
  if (!o.seeds.empty()) {
    auto in = open_input(o.seeds);
    const auto seeds = read_seed_file(in);
    manifest.input(o.seeds);
    manifest.set("seeding", "manual");
    apply_seeds(contexts, inventory, seeds);
  } else if (!o.gold.empty()) {
    const auto gold = load_id_map(o.gold);
    manifest.input(o.gold);
    manifest.set("seeding", "gold");
    manifest.set("seeds_per_sense", config.seeds_per_sense);
    manifest.set("seed_selection", std::string(to_string(config.seed_selection)));
    seed_labels(contexts, inventory, config, gold);
  } else {
    throw ContractError("seeding needs --seeds or --gold");
  }
}

int cmd_seed(const SeedingOptions& o, const std::string& out_dir,
             const std::vector<std::string>& args, std::ostream& out) {
  Manifest manifest("seed", args);
  auto file = load_contexts(o.contexts);
  manifest.input(o.contexts);
  const auto inventory = inventory_for(file, o.senses);
  TrainerConfig config;
  config.seeds_per_sense = o.seeds_per_sense;
  config.seed_selection = parse_seed_selection(o.seed_selection);
  config.rng_seed = o.rng_seed;
  manifest.set("senses", std::vector<std::string>(inventory.senses().begin(), inventory.senses().end()));
  manifest.set("rng_seed", o.rng_seed);
  apply_seeding(o, file.contexts, inventory, config, manifest);

  IdMap seeds;
  for (const auto& c : file.contexts)
    if (c.is_seed) seeds.emplace(c.id, *c.assigned_sense);
  const auto dir = prepare_out_dir(out_dir);
  write_file(dir / "seeds.tsv", manifest, [&](std::ostream& s) { write_id_map(s, seeds); });
  manifest.write(dir);
  out << seeds.size() << " seed contexts written\n";
  return kExitOk;
}

struct TrainOptions {
  SeedingOptions seeding;
  std::string lexicon;
  std::string confidence = "restricted_ratio";
  std::string threshold_mode = "fixed";
  double threshold = 0.95;
  std::int64_t min_coverage = 1;
  int max_iterations = 1000;
  std::string out_dir;
};

int cmd_train(const TrainOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  Manifest manifest("train", args);
  auto file = load_contexts(o.seeding.contexts);
  manifest.input(o.seeding.contexts);
  const auto lexicon = load_lexicon(o.lexicon);
  manifest.input(o.lexicon);
  const auto inventory = inventory_for(file, o.seeding.senses);

  TrainerConfig config;
  config.confidence_method = parse_confidence_method(o.confidence);
  config.threshold_mode = parse_threshold_mode(o.threshold_mode);
  config.threshold = o.threshold;
  config.min_coverage = o.min_coverage;
  config.seeds_per_sense = o.seeding.seeds_per_sense;
  config.max_iterations = o.max_iterations;
  config.rng_seed = o.seeding.rng_seed;
  config.seed_selection = parse_seed_selection(o.seeding.seed_selection);
  config.validate();

  manifest.set("target", inventory.target());
  manifest.set("senses", std::vector<std::string>(inventory.senses().begin(), inventory.senses().end()));
  manifest.set("confidence_method", std::string(to_string(config.confidence_method)));
  manifest.set("threshold_mode", std::string(to_string(config.threshold_mode)));
  manifest.set("threshold", config.effective_threshold(inventory));
  manifest.set("min_coverage", config.min_coverage);
  manifest.set("max_iterations", config.max_iterations);
  manifest.set("rng_seed", config.rng_seed);
  manifest.set("evidence", "co-occurrence");
  manifest.set("one_sense_per_discourse", false);
  apply_seeding(o.seeding, file.contexts, inventory, config, manifest);

  const auto result = train(std::move(file.contexts), lexicon, inventory, config);

  const auto dir = prepare_out_dir(o.out_dir);
  write_file(dir / "model.tsv", manifest,
             [&](std::ostream& s) { write_model(s, inventory, result.final_list); });
  write_file(dir / "stats.tsv", manifest, [&](std::ostream& s) { write_stats(s, result.stats); });
  write_file(dir / "labels.tsv", manifest, [&](std::ostream& s) { write_labels(s, result.labels); });
  manifest.write(dir);

  out << "target " << inventory.target() << ": " << result.converged_at << " iterations, "
      << (result.converged ? "converged" : "NOT converged") << ", residual "
      << fmt::format("{:.4f}", result.residual_fraction * 100.0) << "%, "
      << result.final_list.rules.size() << " rules\n";
  return kExitOk;
}

// ------------------------------------------------------------ eval

struct EvalOptions {
  std::string train_dir;
  std::string contexts;
  std::string gold;
  std::uint64_t rng_seed = 0;
  std::string run_id;
  std::string out_dir;
};

int cmd_eval(const EvalOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  Manifest manifest("eval", args);
  const fs::path train_dir(o.train_dir);
  const auto model_path = (train_dir / "model.tsv").string();
  const auto stats_path = (train_dir / "stats.tsv").string();
  const auto labels_path = (train_dir / "labels.tsv").string();
  const auto train_manifest_path = (train_dir / "manifest.json").string();

  auto model_in = open_input(model_path);
  auto [inventory, list] = read_model(model_in);
  auto stats_in = open_input(stats_path);
  auto labels_in = open_input(labels_path);
  auto train_manifest_in = open_input(train_manifest_path);
  json train_manifest;
  try {
    train_manifest = json::parse(train_manifest_in);
  } catch (const json::exception& e) {
    throw ParseError(train_manifest_path + ": " + e.what(), 0);
  }
  const auto file = load_contexts(o.contexts);
  const auto gold = load_id_map(o.gold);
  for (const auto& p : {model_path, stats_path, labels_path, train_manifest_path, o.contexts, o.gold})
    manifest.input(p);
  if (file.target != inventory.target())
    throw GoldMismatchError("contexts target '" + file.target + "' differs from model target '" +
                            inventory.target() + "'");

  TrainResult result;
  result.final_list = std::move(list);
  result.stats = read_stats(stats_in);
  result.labels = read_labels(labels_in);
  if (!result.stats.empty()) {
    result.converged_at = result.stats.back().iteration;
    result.converged = result.stats.back().newly_labeled == 0;
  }

  std::vector<ContextId> ids;
  for (const auto& c : file.contexts) ids.push_back(c.id);
  const std::set<ContextId> known(ids.begin(), ids.end());
  for (const auto& [id, _] : result.labels)
    if (!known.contains(id))
      throw GoldMismatchError("labeled context " + std::to_string(id) + " is not in the contexts file");
  const auto report = evaluate(result, ids, gold, o.rng_seed);

  SummaryRow row;
  row.target = inventory.target();
  row.method = result.final_list.method;
  row.threshold = result.final_list.threshold;
  row.min_coverage = train_manifest.at("config").value("min_coverage", std::int64_t{1});
  row.report = report;
  manifest.set("rng_seed", o.rng_seed);
  row.run_id = o.run_id.empty() ? manifest.derived_run_id() : o.run_id;
  manifest.set("run_id", row.run_id);

  const auto dir = prepare_out_dir(o.out_dir);
  const ReportPaths paths{dir / "stats.tsv", dir / "summary.tsv", dir / "model.tsv"};
  emit_reports(result, inventory, row, paths);
  manifest.output(paths.stats);
  manifest.output(paths.summary);
  manifest.output(paths.model);
  manifest.write(dir);

  out << "decision list: accuracy_decided " << fmt::format("{:.4f}", report.accuracy_decided)
      << ", decided " << fmt::format("{:.4f}", report.decided_fraction)
      << ", overall(with fallback) " << fmt::format("{:.4f}", report.accuracy_overall_with_fallback)
      << "; baseline " << fmt::format("{:.4f}", report.baseline_accuracy) << "; random "
      << fmt::format("{:.4f}", report.random_accuracy) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------ cluster

struct ClusterOptions {
  std::string contexts;
  std::string lexicon;
  std::string gold;
  ClusterConfig config;
  std::string run_id;
  std::string out_dir;
};

int cmd_cluster(const ClusterOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  Manifest manifest("cluster", args);
  const auto file = load_contexts(o.contexts);
  const auto lexicon = load_lexicon(o.lexicon);
  const auto gold = load_id_map(o.gold);
  for (const auto& p : {o.contexts, o.lexicon, o.gold}) manifest.input(p);
  o.config.validate();

  std::vector<ContextId> ids;
  std::vector<ContextVector> vectors;
  std::vector<SenseId> gold_seq;
  for (const auto& c : file.contexts) {
    auto g = gold.find(c.id);
    if (g == gold.end()) continue;
    ids.push_back(c.id);
    vectors.push_back(vectorize(c, lexicon));
    gold_seq.push_back(g->second);
  }
  if (ids.empty()) throw GoldMismatchError("no context in the contexts file has a gold sense");

  const auto reduced = restrict_features(vectors, lexicon, static_cast<std::size_t>(o.config.top_lemmas));
  const auto km = kmeans(reduced, o.config);
  const double accuracy = cluster_accuracy(km.assignments, gold_seq);
  const auto baseline = baseline_predict(gold_seq);

  manifest.set("k", o.config.k);
  manifest.set("top_lemmas", o.config.top_lemmas);
  manifest.set("max_iterations", o.config.max_iterations);
  manifest.set("tolerance", o.config.tolerance);
  manifest.set("rng_seed", o.config.rng_seed);
  const auto run_id = o.run_id.empty() ? manifest.derived_run_id() : o.run_id;
  manifest.set("run_id", run_id);

  const auto dir = prepare_out_dir(o.out_dir);
  write_file(dir / "assignments.tsv", manifest,
             [&](std::ostream& s) { write_assignments(s, ids, km.assignments); });
  write_file(dir / "summary.tsv", manifest, [&](std::ostream& s) {
    s << "run_id\ttarget\tk\ttop_lemmas\tcontexts\titerations\tconverged\tcluster_accuracy\t"
         "baseline_accuracy\n";
    s << run_id << '\t' << file.target << '\t' << o.config.k << '\t'
      << std::min<std::size_t>(static_cast<std::size_t>(o.config.top_lemmas), lexicon.size()) << '\t'
      << ids.size() << '\t' << km.iterations << '\t' << (km.converged ? "true" : "false") << '\t'
      << format_real(accuracy) << '\t' << format_real(baseline.accuracy) << '\n';
  });
  manifest.write(dir);

  out << "k-means (k=" << o.config.k << ", top " << o.config.top_lemmas << " lemmas): accuracy "
      << fmt::format("{:.4f}", accuracy) << " over " << ids.size() << " contexts\n";
  return kExitOk;
}

}  // namespace

std::string file_sha256(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-supervised decision-list word sense disambiguation toolkit", "wsd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Extract target contexts and build the lexicon");
  ingest_cmd->add_option("--input", ingest.input, "Corpus file")->required();
  ingest_cmd->add_option("--format", ingest.format, "raw or tagged")
      ->check(CLI::IsMember({"raw", "tagged"}))->capture_default_str();
  ingest_cmd->add_option("--target", ingest.target, "Target lemma")->required();
  ingest_cmd->add_option("--senses", ingest.senses, "Comma-separated sense ids");
  ingest_cmd->add_option("--min-line-words", ingest.min_line_words, "Raw mode line length bound")
      ->check(CLI::PositiveNumber)->capture_default_str();
  ingest_cmd->add_option("--content-prefixes", ingest.content_prefixes, "POS prefixes kept")
      ->capture_default_str();
  ingest_cmd->add_flag("--no-content-filter", ingest.no_content_filter, "Keep every token");
  ingest_cmd->add_flag("--pseudoword", ingest.pseudoword_mode,
                       "Pseudo-word dataset (lexicon bound defaults to 30)");
  ingest_cmd->add_option("--min-lexicon-count", ingest.min_lexicon_count,
                         "Minimum contexts per lexicon lemma (default 10, 30 with --pseudoword)")
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--exclude-ids", ingest.exclude_ids, "Context ids to drop");
  ingest_cmd->add_option("--out-dir", ingest.out_dir)->required();

  PseudowordOptions pseudo;
  auto* pseudo_cmd = app.add_subcommand("pseudoword", "Merge two words into a pseudo-word");
  pseudo_cmd->add_option("--input", pseudo.input, "Corpus file")->required();
  pseudo_cmd->add_option("--format", pseudo.format, "raw or tagged")
      ->check(CLI::IsMember({"raw", "tagged"}))->capture_default_str();
  pseudo_cmd->add_option("--min-line-words", pseudo.min_line_words)
      ->check(CLI::PositiveNumber)->capture_default_str();
  pseudo_cmd->add_option("--a", pseudo.spec.word_a, "First source word")->required();
  pseudo_cmd->add_option("--b", pseudo.spec.word_b, "Second source word")->required();
  pseudo_cmd->add_option("--pseudo", pseudo.spec.pseudo, "Replacement lemma")->required();
  pseudo_cmd->add_option("--out-dir", pseudo.out_dir)->required();

  auto add_seeding = [](CLI::App* cmd, SeedingOptions& s) {
    cmd->add_option("--contexts", s.contexts)->required();
    cmd->add_option("--senses", s.senses, "Comma-separated sense ids (default: contexts header)");
    cmd->add_option("--gold", s.gold, "Gold file; seeds are drawn from it");
    cmd->add_option("--seeds", s.seeds, "Manual seed file");
    cmd->add_option("--seeds-per-sense", s.seeds_per_sense)
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--seed-selection", s.seed_selection, "corpus-order or random")
        ->capture_default_str();
    cmd->add_option("--rng-seed", s.rng_seed)->capture_default_str();
  };

  SeedingOptions seed;
  std::string seed_out;
  auto* seed_cmd = app.add_subcommand("seed", "Choose seed contexts");
  add_seeding(seed_cmd, seed);
  seed_cmd->add_option("--out-dir", seed_out)->required();

  TrainOptions tr;
  auto* train_cmd = app.add_subcommand("train", "Run the bootstrapping loop");
  add_seeding(train_cmd, tr.seeding);
  train_cmd->add_option("--lexicon", tr.lexicon)->required();
  train_cmd->add_option("--confidence", tr.confidence,
                        "restricted-ratio, ml, smoothed or log-odds")->capture_default_str();
  train_cmd->add_option("--threshold", tr.threshold)->capture_default_str();
  train_cmd->add_option("--threshold-mode", tr.threshold_mode, "fixed or abney")
      ->capture_default_str();
  train_cmd->add_option("--min-coverage", tr.min_coverage)->capture_default_str();
  train_cmd->add_option("--max-iterations", tr.max_iterations)->capture_default_str();
  train_cmd->add_option("--out-dir", tr.out_dir)->required();

  EvalOptions ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score a trained run against gold");
  eval_cmd->add_option("--train-dir", ev.train_dir)->required();
  eval_cmd->add_option("--contexts", ev.contexts)->required();
  eval_cmd->add_option("--gold", ev.gold)->required();
  eval_cmd->add_option("--rng-seed", ev.rng_seed)->capture_default_str();
  eval_cmd->add_option("--run-id", ev.run_id);
  eval_cmd->add_option("--out-dir", ev.out_dir)->required();

  ClusterOptions cl;
  auto* cluster_cmd = app.add_subcommand("cluster", "k-means comparator");
  cluster_cmd->add_option("--contexts", cl.contexts)->required();
  cluster_cmd->add_option("--lexicon", cl.lexicon)->required();
  cluster_cmd->add_option("--gold", cl.gold)->required();
  cluster_cmd->add_option("--k", cl.config.k)->capture_default_str();
  cluster_cmd->add_option("--top-lemmas", cl.config.top_lemmas)->capture_default_str();
  cluster_cmd->add_option("--max-iterations", cl.config.max_iterations)->capture_default_str();
  cluster_cmd->add_option("--tolerance", cl.config.tolerance)->capture_default_str();
  cluster_cmd->add_option("--rng-seed", cl.config.rng_seed)->capture_default_str();
  cluster_cmd->add_option("--run-id", cl.run_id);
  cluster_cmd->add_option("--out-dir", cl.out_dir)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(ingest, args, out);
    if (*pseudo_cmd) return cmd_pseudoword(pseudo, args, out, err);
    if (*seed_cmd) return cmd_seed(seed, seed_out, args, out);
    if (*train_cmd) return cmd_train(tr, args, out);
    if (*eval_cmd) return cmd_eval(ev, args, out);
    if (*cluster_cmd) return cmd_cluster(cl, args, out);
  } catch (const SeedError& e) {
    err << "wsd: seeding error: " << e.what() << '\n';
    return kExitSeeding;
  } catch (const GoldMismatchError& e) {
    err << "wsd: gold mismatch: " << e.what() << '\n';
    return kExitGoldMismatch;
  } catch (const IoError& e) {
    err << "wsd: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParseError& e) {
    err << "wsd: parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ContractError& e) {
    err << "wsd: invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "wsd: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace wsd
