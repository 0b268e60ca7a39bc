#ifndef WNEVAL_DEBATE_HPP
#define WNEVAL_DEBATE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wneval/backend.hpp"
#include "wneval/corpus.hpp"
#include "wneval/decision.hpp"
#include "wneval/rubric.hpp"
#include "wneval/task.hpp"

namespace wneval {

struct DebateConfig {
  int max_rounds = 3;
  // Gold examples embedded per prompt; capped at what the registry has.
  int exemplar_limit = 2;
  // Supplementary background text injected into the attention notes.
  std::optional<std::string> knowledge;
};

struct MemoryEntry {
  int round = 0;  // 1-based
  std::string agent_id;
  DecisionVector decision;
};

/// Append-only debate history shared by all three participants.
/// Entries must arrive in strictly increasing (round, agent) order.
class DebateMemory {
 public:
  void append(int round, std::string agent_id, DecisionVector decision);

  const std::vector<MemoryEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Prompt section body: one block per entry with scores and the
  /// verbatim rationale; "none" for an empty history.
  std::string render() const;

 private:
  std::vector<MemoryEntry> entries_;
};

struct RoundRecord {
  int round = 0;
  DecisionVector agent1;
  DecisionVector agent2;
  std::string agent1_raw;
  std::string agent2_raw;
  std::string judge_raw;
  bool judge_consensus = false;
  std::string judge_reason;
  std::vector<std::string> request_digests;
};

enum class DebateOutcome { Consensus, JudgeFinal };

std::string outcome_name(DebateOutcome outcome);
std::optional<DebateOutcome> outcome_from_name(const std::string& name);

/// Complete record of one debate. Transcripts carry no timestamps, so
/// the serialized form is directly comparable across runs.
struct DebateTranscript {
  std::string item_id;
  std::string system;
  TaskDimension task = TaskDimension::IdiomTranslation;
  std::vector<RoundRecord> rounds;
  DecisionVector final_decision;
  DebateOutcome outcome = DebateOutcome::Consensus;
};

struct DebateBackends {
  std::shared_ptr<Backend> agent1;
  std::shared_ptr<Backend> agent2;
  std::shared_ptr<Backend> judge;
};

/// Scoring-agent prompt: role line, task details, response-format
/// constraints, attention notes, the full three-metric scoring rules,
/// gold examples, and the debate progress ("none" in round 1).
/// Deterministic byte-for-byte for fixed inputs.
std::string build_debater_prompt(const EvaluationItem& item,
                                 const std::string& translation,
                                 const RuleSet& rules,
                                 const std::vector<GoldExample>& exemplars,
                                 const DebateMemory& memory,
                                 const std::optional<std::string>& knowledge);

/// Judge prompt: same task context plus both agents' latest decisions
/// and the judge instructions (consensus check, record agreed
/// evaluation, otherwise final comprehensive evaluation). The memory
/// must already contain the current round's two decisions.
std::string build_judge_prompt(const EvaluationItem& item,
                               const std::string& translation,
                               const RuleSet& rules,
                               const std::vector<GoldExample>& exemplars,
                               const DebateMemory& memory);

/// Runs one debate to consensus or the round limit. Each round queries
/// both agents, appends their decisions to memory, then asks the judge.
/// Unparsable replies are re-asked up to twice with a format reminder;
/// a judge that stays unparsable falls back to the deterministic rule
/// (consensus exactly when the two score vectors are equal).
DebateTranscript run_debate(const EvaluationItem& item,
                            const std::string& translation,
                            const std::string& system_name,
                            const DebateConfig& config,
                            const RubricRegistry& registry,
                            const DebateBackends& backends);

struct BatchFailure {
  std::size_t input_index = 0;
  std::string item_id;
  std::string system;
  std::string error;
};

struct BatchResult {
  // Successful transcripts in input order; failed pairs are absent
  // here and listed in failures instead.
  std::vector<DebateTranscript> transcripts;
  std::vector<BatchFailure> failures;
};

using BackendProvider = std::function<DebateBackends(
    const EvaluationItem& item, const TranslationRecord& record)>;

/// Debates every (item, system) pair with bounded parallelism. Results
/// keep input order regardless of completion order; one pair's failure
/// never aborts the others.
BatchResult evaluate_batch(const std::vector<EvaluationItem>& items,
                           const std::vector<TranslationRecord>& translations,
                           const DebateConfig& config,
                           const RubricRegistry& registry,
                           const BackendProvider& provider, int parallelism);

std::string serialize_transcript(const DebateTranscript& transcript);
DebateTranscript parse_transcript(const std::string& text);

/// One serialized transcript per line.
void save_transcripts(const std::string& path,
                      const std::vector<DebateTranscript>& transcripts);
std::vector<DebateTranscript> load_transcripts(const std::string& path);

}  // namespace wneval

#endif  // WNEVAL_DEBATE_HPP
