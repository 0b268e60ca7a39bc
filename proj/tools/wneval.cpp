// Command-line front end: context-aware translation, debate evaluation,
// lexical metric scoring, meta-evaluation statistics, and leaderboard
// reports over line-delimited JSON files.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wneval/backend.hpp"
#include "wneval/corpus.hpp"
#include "wneval/debate.hpp"
#include "wneval/error.hpp"
#include "wneval/harness.hpp"
#include "wneval/metrics.hpp"

namespace {

using namespace wneval;

struct GlobalOptions {
  std::string config_path;
  std::string out_path;
  int parallelism = 1;
  int max_rounds = 0;  // 0 = use config/default
  std::string scripted_path;
  std::string backend_name;
};

HarnessConfig load_config_or_default(const GlobalOptions& opts) {
  if (opts.config_path.empty()) return {};
  return load_config(opts.config_path);
}

// One backend per invocation: the scripted replay file when given,
// otherwise the named (or default) HTTP backend from the config.
std::shared_ptr<Backend> make_backend(const GlobalOptions& opts,
                                      const HarnessConfig& config) {
  if (!opts.scripted_path.empty())
    return std::make_shared<ScriptedBackend>(
        load_reply_lines(opts.scripted_path));
  std::string name =
      opts.backend_name.empty() ? config.default_backend : opts.backend_name;
  if (name.empty())
    throw Error("no backend selected: pass --backend/--seed-scripted or set "
                "default_backend in the config");
  auto found = config.backends.find(name);
  if (found == config.backends.end())
    throw Error("backend \"" + name + "\" is not in the config");
  return std::make_shared<HttpBackend>(found->second);
}

void require_out(const GlobalOptions& opts) {
  if (opts.out_path.empty()) throw Error("--out is required for this command");
}

int run_translate(const GlobalOptions& opts, const std::string& items_path,
                  const std::string& system_name) {
  require_out(opts);
  HarnessConfig config = load_config_or_default(opts);
  auto backend = make_backend(opts, config);
  auto items = load_corpus(items_path);

  std::vector<TranslationRecord> records;
  records.reserve(items.size());
  for (const EvaluationItem& item : items)
    records.push_back(
        {item.id, system_name, translate_with_context(*backend, item)});
  save_translations(opts.out_path, records);
  std::cout << "translated " << records.size() << " items as system \""
            << system_name << "\" -> " << opts.out_path << "\n";
  return 0;
}

int run_evaluate(const GlobalOptions& opts, const std::string& items_path,
                 const std::string& translations_path,
                 const std::string& scores_out) {
  require_out(opts);
  HarnessConfig config = load_config_or_default(opts);
  DebateConfig debate = config.debate;
  if (opts.max_rounds > 0) debate.max_rounds = opts.max_rounds;

  auto items = load_corpus(items_path);
  auto translations = load_translations(translations_path, items);

  auto backend = make_backend(opts, config);
  DebateBackends shared{backend, backend, backend};
  BackendProvider provider = [&shared](const EvaluationItem&,
                                       const TranslationRecord&) {
    return shared;
  };

  // A shared scripted queue is consumed in request order, so replay
  // runs must stay sequential to be deterministic.
  int parallelism = opts.parallelism;
  if (!opts.scripted_path.empty()) parallelism = 1;

  RubricRegistry registry = RubricRegistry::builtin();
  BatchResult result = evaluate_batch(items, translations, debate, registry,
                                      provider, parallelism);
  save_transcripts(opts.out_path, result.transcripts);

  if (!scores_out.empty()) {
    std::vector<ScoreRecord> scores;
    scores.reserve(result.transcripts.size());
    for (const DebateTranscript& t : result.transcripts) {
      ScoreRecord r;
      r.item_id = t.item_id;
      r.system = t.system;
      r.decision = t.final_decision;
      scores.push_back(std::move(r));
    }
    save_scores(scores_out, scores);
  }

  std::cout << "evaluated " << result.transcripts.size() << " pairs -> "
            << opts.out_path << "\n";
  for (const BatchFailure& f : result.failures)
    std::cerr << "failed (" << f.item_id << ", " << f.system
              << "): " << f.error << "\n";
  return result.failures.empty() ? 0 : 1;
}

int run_metrics(const GlobalOptions& opts, const std::string& items_path,
                const std::string& translations_path,
                const std::string& metric_name, int max_n, bool no_smoothing,
                double beta, bool keep_case) {
  require_out(opts);
  auto items = load_corpus(items_path);
  auto translations = load_translations(translations_path, items);

  std::map<std::string, const EvaluationItem*> by_id;
  for (const EvaluationItem& item : items) by_id[item.id] = &item;

  std::vector<ScoreRecord> records;
  records.reserve(translations.size());
  for (const TranslationRecord& t : translations) {
    const EvaluationItem& item = *by_id.at(t.item_id);
    if (!item.reference)
      throw Error("item " + item.id + " has no reference translation; "
                  "lexical metrics need one");
    MetricScore score;
    if (metric_name == "bleu") {
      score = bleu(tokenize(t.translation, !keep_case),
                   {tokenize(*item.reference, !keep_case)},
                   max_n > 0 ? max_n : 4,
                   no_smoothing ? BleuSmoothing::None : BleuSmoothing::ExpDecay);
    } else if (metric_name == "chrf") {
      score = chrf(t.translation, *item.reference, max_n > 0 ? max_n : 6, beta);
    } else if (metric_name == "rouge_l") {
      score = rouge_l(tokenize(t.translation, !keep_case),
                      tokenize(*item.reference, !keep_case));
    } else {
      throw Error("unknown metric \"" + metric_name +
                  "\"; expected bleu, chrf or rouge_l");
    }
    ScoreRecord r;
    r.item_id = t.item_id;
    r.system = t.system;
    r.score = score.value;
    records.push_back(std::move(r));
  }
  save_scores(opts.out_path, records);
  std::cout << "scored " << records.size() << " pairs with " << metric_name
            << " -> " << opts.out_path << "\n";
  return 0;
}

int run_agree(const GlobalOptions& opts, const std::string& annotations_path,
              const std::vector<std::string>& score_specs, bool table) {
  auto annotations = load_annotations(annotations_path);

  std::vector<NamedScores> sets;
  for (const std::string& spec : score_specs) {
    std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
      throw Error("--scores expects name=path, got \"" + spec + "\"");
    sets.push_back({spec.substr(0, eq), load_scores(spec.substr(eq + 1))});
  }

  MetaEvalReport report = meta_eval(annotations, sets);
  if (table || opts.out_path.empty()) std::cout << emit_meta_table(report);
  if (!opts.out_path.empty()) {
    write_file(opts.out_path, serialize_meta(report));
    std::cout << "report -> " << opts.out_path << "\n";
  }
  return 0;
}

int run_report(const GlobalOptions& opts, const std::string& transcripts_path,
               bool table) {
  auto transcripts = load_transcripts(transcripts_path);
  Leaderboard board = aggregate(transcripts);
  if (table || opts.out_path.empty())
    std::cout << emit_leaderboard_table(board);
  if (!opts.out_path.empty()) {
    write_file(opts.out_path, serialize_leaderboard(board));
    std::cout << "leaderboard -> " << opts.out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Web novel translation evaluation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  app.add_option("--config", opts.config_path,
                 "JSON config with named backends and debate settings");
  app.add_option("--out", opts.out_path, "Output file path");
  app.add_option("--parallelism", opts.parallelism,
                 "Concurrent debates for evaluate")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-rounds", opts.max_rounds,
                 "Debate round limit (overrides config)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed-scripted", opts.scripted_path,
                 "Reply file for the deterministic scripted backend");
  app.add_option("--backend", opts.backend_name,
                 "Named backend from the config");

  auto* translate = app.add_subcommand(
      "translate", "Translate corpus items with preceding context");
  std::string items_path, system_name{"candidate"};
  translate->add_option("--items", items_path, "Corpus file (JSONL)")
      ->required();
  translate->add_option("--system-name", system_name,
                        "System label for the output records");

  auto* evaluate = app.add_subcommand(
      "evaluate", "Run debate evaluation over translated pairs");
  std::string translations_path, scores_out;
  evaluate->add_option("--items", items_path, "Corpus file (JSONL)")
      ->required();
  evaluate
      ->add_option("--translations", translations_path,
                   "Translation records (JSONL)")
      ->required();
  evaluate->add_option("--scores-out", scores_out,
                       "Also write final decision vectors as a score file");

  auto* metrics = app.add_subcommand(
      "metrics", "Score translations against references with a lexical "
                 "metric");
  std::string metric_name{"bleu"};
  int max_n = 0;
  bool no_smoothing = false, keep_case = false;
  double beta = 2.0;
  metrics->add_option("--items", items_path, "Corpus file (JSONL)")
      ->required();
  metrics
      ->add_option("--translations", translations_path,
                   "Translation records (JSONL)")
      ->required();
  metrics->add_option("--metric", metric_name, "bleu, chrf or rouge_l");
  metrics->add_option("--max-n", max_n, "Maximum n-gram order");
  metrics->add_flag("--no-smoothing", no_smoothing,
                    "Disable BLEU zero-count smoothing");
  metrics->add_option("--beta", beta, "chrF recall weight");
  metrics->add_flag("--keep-case", keep_case, "Skip ASCII lowercasing");

  auto* agree = app.add_subcommand(
      "agree", "Correlation and agreement statistics against annotations");
  std::string annotations_path;
  std::vector<std::string> score_specs;
  bool table = false;
  agree
      ->add_option("--annotations", annotations_path,
                   "Annotation records (JSONL)")
      ->required();
  agree
      ->add_option("--scores", score_specs,
                   "Score file as name=path (repeatable)")
      ->required();
  agree->add_flag("--table", table, "Print the text table even with --out");

  auto* report = app.add_subcommand(
      "report", "Aggregate transcripts into a leaderboard");
  std::string transcripts_path;
  report
      ->add_option("--transcripts", transcripts_path,
                   "Transcript file from evaluate")
      ->required();
  report->add_flag("--table", table, "Print the text table even with --out");

  CLI11_PARSE(app, argc, argv);

  try {
    if (translate->parsed())
      return run_translate(opts, items_path, system_name);
    if (evaluate->parsed())
      return run_evaluate(opts, items_path, translations_path, scores_out);
    if (metrics->parsed())
      return run_metrics(opts, items_path, translations_path, metric_name,
                         max_n, no_smoothing, beta, keep_case);
    if (agree->parsed())
      return run_agree(opts, annotations_path, score_specs, table);
    if (report->parsed()) return run_report(opts, transcripts_path, table);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
