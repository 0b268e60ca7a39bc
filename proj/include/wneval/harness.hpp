#ifndef WNEVAL_HARNESS_HPP
#define WNEVAL_HARNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wneval/agreement.hpp"
#include "wneval/backend.hpp"
#include "wneval/corpus.hpp"
#include "wneval/debate.hpp"
#include "wneval/task.hpp"

namespace wneval {

/// Per-system, per-dimension averages on the 0-2 scale; sigma is their
/// sum, always recomputed from the unrounded averages.
struct DimensionScore {
  TaskDimension task = TaskDimension::IdiomTranslation;
  double s_avg = 0.0;
  double g1_avg = 0.0;
  double g2_avg = 0.0;
  double sigma = 0.0;
  std::size_t n_items = 0;
};

struct SystemScores {
  std::string system;
  // Canonical task order; tasks with no items for this system are absent.
  std::vector<DimensionScore> dimensions;
  // Mean of the sigmas present in `dimensions`.
  double average_sigma = 0.0;
};

struct Leaderboard {
  // Systems in first-appearance input order.
  std::vector<SystemScores> systems;
};

/// One scored (item, system) pair from a score file: either a scalar
/// metric value or a full decision vector (engine runs).
struct ScoreRecord {
  std::string item_id;
  std::string system;
  std::optional<double> score;
  std::optional<DecisionVector> decision;

  double total() const;
};

struct NamedScores {
  std::string name;
  std::vector<ScoreRecord> records;
};

std::vector<ScoreRecord> parse_scores(const std::string& content,
                                      const std::string& origin);
std::vector<ScoreRecord> load_scores(const std::string& path);
std::string serialize_scores(const std::vector<ScoreRecord>& records);
void save_scores(const std::string& path,
                 const std::vector<ScoreRecord>& records);

/// Translation prompt: optional preceding-context block plus the source
/// sentence; deterministic for fixed input.
std::string build_translation_prompt(const EvaluationItem& item);

/// Sends the translation prompt and returns the reply verbatim.
std::string translate_with_context(Backend& backend,
                                   const EvaluationItem& item);

/// Half-up rounding to 2 decimals, used only when printing.
double display_round(double value);

/// Means of final sub-scores per (system, task); empty input gives an
/// empty leaderboard.
Leaderboard aggregate(const std::vector<DebateTranscript>& transcripts);

/// Aligned-column text table: one row per system, sigma per task plus
/// the average; values display-rounded, absent tasks marked "-".
std::string emit_leaderboard_table(const Leaderboard& board);

/// Machine-readable JSON form; parse_leaderboard inverts it losslessly.
std::string serialize_leaderboard(const Leaderboard& board);
Leaderboard parse_leaderboard(const std::string& text);

struct MetricCorrelationRow {
  std::string metric;
  CorrelationReport correlation;
};

struct AgreementRow {
  std::string metric;     // score-set name
  std::string kind;       // specific | general1 | general2 | total
  std::string annotator;  // annotator id, or "pooled"
  int n = 0;
  AgreementReport report;
};

struct MetaEvalReport {
  std::vector<MetricCorrelationRow> correlations;
  std::vector<AgreementRow> agreements;
  // Keys on one side only, prefixed with the score-set name.
  std::vector<std::string> unmatched_keys;
};

/// Correlates each score set against annotator-averaged human totals
/// (Spearman + variance explained). Score sets carrying decision
/// vectors additionally get agreement statistics against each annotator
/// and pooled, per metric kind (3 classes) and on totals (7 classes);
/// the pooled total row includes ICC over the engine and all
/// annotators. Fewer than 2 aligned pairs for a score set is an error.
MetaEvalReport meta_eval(const std::vector<AnnotationRecord>& annotations,
                         const std::vector<NamedScores>& score_sets);

std::string emit_meta_table(const MetaEvalReport& report);
std::string serialize_meta(const MetaEvalReport& report);

/// Named backend configurations plus debate settings for the CLI.
struct HarnessConfig {
  std::map<std::string, BackendConfig> backends;
  std::string default_backend;
  DebateConfig debate;
};

HarnessConfig parse_config(const std::string& content,
                           const std::string& origin);
HarnessConfig load_config(const std::string& path);

}  // namespace wneval

#endif  // WNEVAL_HARNESS_HPP
