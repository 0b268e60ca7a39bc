#include "wneval/debate.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>
#include <tuple>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "wneval/error.hpp"

namespace wneval {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Initial ask plus two re-asks with a format reminder.
constexpr int kMaxAsks = 3;

constexpr const char* kDebaterReminder =
    "Your previous reply could not be parsed. Reply again and start with "
    "exactly this format: \"Specific Metric: x. General Metric1: y. General "
    "Metric2: z.\" where x, y and z are each 0, 1 or 2, followed by your "
    "rationale.";

constexpr const char* kJudgeReminder =
    "Your previous reply could not be used. Answer again: state \"Judge: "
    "yes\" only if both agents gave identical scores and aligned reasoning, "
    "otherwise \"Judge: no\" with \"Reason: ...\"; when you answer no in the "
    "final round, append your own evaluation as \"Specific Metric: x. General "
    "Metric1: y. General Metric2: z.\".";

std::string task_details(const EvaluationItem& item,
                         const std::string& translation) {
  std::string out =
      "Evaluate the following Chinese-to-English web novel translation.\n";
  out += "Dimension under evaluation: ";
  out += task_label(item.task);
  out += "\n";
  if (item.context_prev && !item.context_prev->empty())
    out += "Preceding context: " + *item.context_prev + "\n";
  out += "Source: " + item.source + "\n";
  out += "Translation: " + translation;
  return out;
}

std::string scoring_rules(const RuleSet& rules) {
  std::string out;
  for (MetricKind kind :
       {MetricKind::Specific, MetricKind::General1, MetricKind::General2}) {
    const MetricSpec& spec = rules.metric(kind);
    out += std::string(metric_kind_name(kind)) + " (" + spec.name + "):\n";
    for (int level = 2; level >= 0; --level)
      out += std::to_string(level) + ": " + spec.criterion(level) + "\n";
  }
  out.pop_back();
  return out;
}

std::string scoring_examples(const std::vector<GoldExample>& exemplars) {
  if (exemplars.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    const GoldExample& ex = exemplars[i];
    if (i > 0) out += "\n\n";
    out += "Source: " + ex.source + "\n";
    out += "Translation: " + ex.translation + "\n";
    out += "Specific Metric: " + std::to_string(ex.specific) +
           ". General Metric1: " + std::to_string(ex.general1) +
           ". General Metric2: " + std::to_string(ex.general2) + ".";
    if (!ex.commentary.empty()) out += "\nCommentary: " + ex.commentary;
  }
  return out;
}

std::string attention_notes(const std::optional<std::string>& knowledge) {
  std::string out =
      "Judge only the sentence pair shown above; use the preceding context "
      "solely to resolve references, ellipses and tense.\n"
      "Give concrete evidence from the source and the translation for every "
      "score.\n"
      "Weigh the other participants' arguments critically and revise your "
      "scores only when the evidence warrants it.";
  if (knowledge && !knowledge->empty())
    out += "\nBackground knowledge: " + *knowledge;
  return out;
}

}  // namespace

void DebateMemory::append(int round, std::string agent_id,
                          DecisionVector decision) {
  if (round < 1) throw Error("debate memory: round must be >= 1");
  if (!entries_.empty()) {
    const MemoryEntry& last = entries_.back();
    if (std::tie(round, agent_id) <= std::tie(last.round, last.agent_id))
      throw Error("debate memory: entries must arrive in (round, agent) "
                  "order; got round " +
                  std::to_string(round) + " agent " + agent_id + " after round " +
                  std::to_string(last.round) + " agent " + last.agent_id);
  }
  entries_.push_back({round, std::move(agent_id), std::move(decision)});
}

std::string DebateMemory::render() const {
  if (entries_.empty()) return "none";
  std::string out;
  for (const MemoryEntry& e : entries_) {
    if (!out.empty()) out += "\n";
    out += "Round " + std::to_string(e.round) + ", Agent " + e.agent_id +
           ": Specific Metric: " + std::to_string(e.decision.specific) +
           ". General Metric1: " + std::to_string(e.decision.general1) +
           ". General Metric2: " + std::to_string(e.decision.general2) + ".\n";
    out += "Rationale: " + e.decision.rationale;
  }
  return out;
}

std::string build_debater_prompt(const EvaluationItem& item,
                                 const std::string& translation,
                                 const RuleSet& rules,
                                 const std::vector<GoldExample>& exemplars,
                                 const DebateMemory& memory,
                                 const std::optional<std::string>& knowledge) {
  if (rules.task != item.task)
    throw Error("debater prompt: rule set is for " +
                std::string(task_name(rules.task)) + " but item " + item.id +
                " is " + std::string(task_name(item.task)));
  std::string out = "You are a translation expert.\n\n";
  out += "Translation task:\n" + task_details(item, translation) + "\n\n";
  out += "Description of restrictive conditions:\n";
  out +=
      "Score the three metrics below, each on the scale {0, 1, 2}.\n"
      "Reply in exactly this format: \"Specific Metric: x. General Metric1: "
      "y. General Metric2: z.\" followed by your rationale.\n\n";
  out += "Here are the points you must pay attention to:\n" +
         attention_notes(knowledge) + "\n\n";
  out +=
      "The following are the scoring rules. The scoring cases in them are "
      "for your reference:\n" +
      scoring_rules(rules) + "\n\n";
  out += "Scoring example:\n" + scoring_examples(exemplars) + "\n\n";
  out += "Debate progress:\n" + memory.render();
  return out;
}

std::string build_judge_prompt(const EvaluationItem& item,
                               const std::string& translation,
                               const RuleSet& rules,
                               const std::vector<GoldExample>& exemplars,
                               const DebateMemory& memory) {
  if (memory.empty())
    throw Error("judge prompt: debate memory is empty for item " + item.id);
  if (rules.task != item.task)
    throw Error("judge prompt: rule set is for " +
                std::string(task_name(rules.task)) + " but item " + item.id +
                " is " + std::string(task_name(item.task)));
  std::string out = "You are a translation evaluation judge.\n\n";
  out += "Translation task:\n" + task_details(item, translation) + "\n\n";
  out += "Description of restrictive conditions:\n";
  out +=
      "Answer \"Judge: yes\" when the agents' scores and reasoning align, "
      "otherwise \"Judge: no\".\n"
      "Follow the verdict with \"Reason: ...\" explaining your decision.\n"
      "When you answer no in the final round, append your own final "
      "evaluation as \"Specific Metric: x. General Metric1: y. General "
      "Metric2: z.\".\n\n";
  out += "Here are the points you must pay attention to:\n" +
         attention_notes(std::nullopt) + "\n\n";
  out +=
      "The following are the scoring rules. The scoring cases in them are "
      "for your reference:\n" +
      scoring_rules(rules) + "\n\n";
  out += "Scoring example:\n" + scoring_examples(exemplars) + "\n\n";
  out += "Debate progress:\n" + memory.render() + "\n\n";
  out += "Judge instructions:\n";
  out +=
      "Determine whether the debating agents have reached a consensus.\n"
      "If consensus is reached, record the agreed-upon evaluation.\n"
      "If consensus is not reached, review all arguments and "
      "counterarguments, then provide your final comprehensive evaluation.";
  return out;
}

namespace {

std::string ask_raw(Backend& backend, const std::string& prompt,
                    std::vector<std::string>& digests) {
  CompletionRequest req;
  req.user_text = prompt;
  digests.push_back(request_digest(req));
  return backend.complete(req);
}

DecisionVector ask_agent(Backend& backend, const char* agent_id,
                         const std::string& base_prompt, const RuleSet& rules,
                         std::string& raw_out,
                         std::vector<std::string>& digests) {
  std::string prompt = base_prompt;
  for (int attempt = 1;; ++attempt) {
    raw_out = ask_raw(backend, prompt, digests);
    try {
      return parse_decision(raw_out, rules);
    } catch (const ParseError& e) {
      if (attempt == kMaxAsks)
        throw Error("agent " + std::string(agent_id) + " reply unparsable "
                    "after " + std::to_string(kMaxAsks) + " attempts: " +
                    e.what());
      prompt = base_prompt + "\n\n" + kDebaterReminder;
    }
  }
}

struct JudgeOutcome {
  JudgeVerdict verdict;
  std::string raw;
};

// Asks the judge, re-asking on unusable replies: unparsable text, a
// yes-verdict contradicting unequal agent vectors, or a final-round
// no-verdict without the judge's own evaluation. After the re-ask
// budget the deterministic fallback applies: consensus exactly when
// the two score vectors match, otherwise the debate is an error.
JudgeOutcome ask_judge(Backend& backend, const std::string& base_prompt,
                       bool final_round, const DecisionVector& agent1,
                       const DecisionVector& agent2,
                       std::vector<std::string>& digests) {
  const bool vectors_equal = agent1.scores_equal(agent2);
  std::string prompt = base_prompt;
  std::string raw;
  for (int attempt = 1; attempt <= kMaxAsks; ++attempt) {
    raw = ask_raw(backend, prompt, digests);
    try {
      JudgeVerdict verdict = parse_judge(raw);
      if (verdict.consensus && !vectors_equal)
        throw ParseError("judge asserted consensus but the agents' score "
                         "vectors differ", raw);
      if (!verdict.consensus && final_round && !verdict.final_decision)
        throw ParseError("final-round judge gave no evaluation of its own",
                         raw);
      return {std::move(verdict), std::move(raw)};
    } catch (const ParseError&) {
      if (attempt == kMaxAsks) break;
      prompt = base_prompt + "\n\n" + kJudgeReminder;
    }
  }
  if (vectors_equal) {
    JudgeVerdict verdict;
    verdict.consensus = true;
    verdict.reason =
        "deterministic fallback: judge reply unusable, agent score vectors "
        "are identical";
    return {std::move(verdict), std::move(raw)};
  }
  throw Error("judge reply unusable after " + std::to_string(kMaxAsks) +
              " attempts and the agents disagree");
}

}  // namespace

std::string outcome_name(DebateOutcome outcome) {
  return outcome == DebateOutcome::Consensus ? "consensus" : "judge_final";
}

std::optional<DebateOutcome> outcome_from_name(const std::string& name) {
  if (name == "consensus") return DebateOutcome::Consensus;
  if (name == "judge_final") return DebateOutcome::JudgeFinal;
  return std::nullopt;
}

DebateTranscript run_debate(const EvaluationItem& item,
                            const std::string& translation,
                            const std::string& system_name,
                            const DebateConfig& config,
                            const RubricRegistry& registry,
                            const DebateBackends& backends) {
  if (config.max_rounds < 1) throw Error("debate: max_rounds must be >= 1");
  if (!backends.agent1 || !backends.agent2 || !backends.judge)
    throw Error("debate: all three backends must be set");

  const RuleSet& rules = registry.ruleset_for(item.task);
  auto exemplars = registry.exemplars_for(item.task, config.exemplar_limit);

  DebateTranscript transcript;
  transcript.item_id = item.id;
  transcript.system = system_name;
  transcript.task = item.task;

  DebateMemory memory;
  for (int round = 1; round <= config.max_rounds; ++round) {
    RoundRecord rec;
    rec.round = round;

    std::string prompt = build_debater_prompt(item, translation, rules,
                                              exemplars, memory,
                                              config.knowledge);
    rec.agent1 = ask_agent(*backends.agent1, "A1", prompt, rules,
                           rec.agent1_raw, rec.request_digests);
    rec.agent2 = ask_agent(*backends.agent2, "A2", prompt, rules,
                           rec.agent2_raw, rec.request_digests);
    memory.append(round, "A1", rec.agent1);
    memory.append(round, "A2", rec.agent2);

    std::string judge_prompt =
        build_judge_prompt(item, translation, rules, exemplars, memory);
    const bool final_round = round == config.max_rounds;
    JudgeOutcome judged = ask_judge(*backends.judge, judge_prompt, final_round,
                                    rec.agent1, rec.agent2,
                                    rec.request_digests);
    rec.judge_raw = judged.raw;
    rec.judge_consensus = judged.verdict.consensus;
    rec.judge_reason = judged.verdict.reason;

    if (judged.verdict.consensus) {
      // The agreed vector is final; the judge only certifies it.
      transcript.final_decision = rec.agent1;
      transcript.outcome = DebateOutcome::Consensus;
      transcript.rounds.push_back(std::move(rec));
      break;
    }
    if (final_round) {
      transcript.final_decision = *judged.verdict.final_decision;
      transcript.outcome = DebateOutcome::JudgeFinal;
      transcript.rounds.push_back(std::move(rec));
      break;
    }
    transcript.rounds.push_back(std::move(rec));
  }

  auto violations = validate_decision(transcript.final_decision, rules);
  if (!violations.empty())
    throw Error("debate produced an invalid final decision for item " +
                item.id + ": " + violations[0]);
  return transcript;
}

BatchResult evaluate_batch(const std::vector<EvaluationItem>& items,
                           const std::vector<TranslationRecord>& translations,
                           const DebateConfig& config,
                           const RubricRegistry& registry,
                           const BackendProvider& provider, int parallelism) {
  if (parallelism < 1) throw Error("evaluate_batch: parallelism must be >= 1");
  if (!provider) throw Error("evaluate_batch: backend provider must be set");

  std::unordered_map<std::string, const EvaluationItem*> by_id;
  for (const EvaluationItem& item : items) by_id[item.id] = &item;

  struct Slot {
    std::optional<DebateTranscript> transcript;
    std::optional<BatchFailure> failure;
  };
  std::vector<Slot> slots(translations.size());
  std::atomic<std::size_t> cursor{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= translations.size()) return;
      const TranslationRecord& rec = translations[i];
      try {
        auto found = by_id.find(rec.item_id);
        if (found == by_id.end())
          throw Error("translation refers to unknown item_id: " + rec.item_id);
        DebateBackends backends = provider(*found->second, rec);
        slots[i].transcript = run_debate(*found->second, rec.translation,
                                         rec.system, config, registry,
                                         backends);
      } catch (const std::exception& e) {
        slots[i].failure = BatchFailure{i, rec.item_id, rec.system, e.what()};
      }
    }
  };

  const std::size_t n_threads = std::min<std::size_t>(
      static_cast<std::size_t>(parallelism),
      std::max<std::size_t>(translations.size(), 1));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  BatchResult result;
  for (Slot& slot : slots) {
    if (slot.transcript) result.transcripts.push_back(std::move(*slot.transcript));
    if (slot.failure) result.failures.push_back(std::move(*slot.failure));
  }
  return result;
}

namespace {

ordered_json decision_to_json(const DecisionVector& v) {
  return ordered_json{{"specific", v.specific},
                      {"general1", v.general1},
                      {"general2", v.general2},
                      {"rationale", v.rationale}};
}

DecisionVector decision_from_json(const json& j, const char* where) {
  if (!j.is_object())
    throw Error(std::string("transcript: ") + where + " is not an object");
  DecisionVector v;
  try {
    v.specific = j.at("specific").get<int>();
    v.general1 = j.at("general1").get<int>();
    v.general2 = j.at("general2").get<int>();
    v.rationale = j.value("rationale", std::string());
  } catch (const json::exception& e) {
    throw Error(std::string("transcript: bad decision in ") + where + ": " +
                e.what());
  }
  return v;
}

}  // namespace

std::string serialize_transcript(const DebateTranscript& transcript) {
  ordered_json rounds = ordered_json::array();
  for (const RoundRecord& r : transcript.rounds) {
    rounds.push_back(ordered_json{{"round", r.round},
                                  {"agent1", decision_to_json(r.agent1)},
                                  {"agent2", decision_to_json(r.agent2)},
                                  {"agent1_raw", r.agent1_raw},
                                  {"agent2_raw", r.agent2_raw},
                                  {"judge_raw", r.judge_raw},
                                  {"judge_consensus", r.judge_consensus},
                                  {"judge_reason", r.judge_reason},
                                  {"request_digests", r.request_digests}});
  }
  ordered_json j{{"item_id", transcript.item_id},
                 {"system", transcript.system},
                 {"task", task_name(transcript.task)},
                 {"rounds", std::move(rounds)},
                 {"final", decision_to_json(transcript.final_decision)},
                 {"outcome", outcome_name(transcript.outcome)}};
  return j.dump();
}

DebateTranscript parse_transcript(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("transcript: not a JSON object");
  DebateTranscript t;
  try {
    t.item_id = j.at("item_id").get<std::string>();
    t.system = j.at("system").get<std::string>();
    auto task = task_from_name(j.at("task").get<std::string>());
    if (!task)
      throw Error("transcript: unknown task " +
                  j.at("task").get<std::string>());
    t.task = *task;
    for (const json& rj : j.at("rounds")) {
      RoundRecord r;
      r.round = rj.at("round").get<int>();
      r.agent1 = decision_from_json(rj.at("agent1"), "agent1");
      r.agent2 = decision_from_json(rj.at("agent2"), "agent2");
      r.agent1_raw = rj.value("agent1_raw", std::string());
      r.agent2_raw = rj.value("agent2_raw", std::string());
      r.judge_raw = rj.value("judge_raw", std::string());
      r.judge_consensus = rj.at("judge_consensus").get<bool>();
      r.judge_reason = rj.value("judge_reason", std::string());
      if (rj.contains("request_digests"))
        r.request_digests =
            rj.at("request_digests").get<std::vector<std::string>>();
      t.rounds.push_back(std::move(r));
    }
    t.final_decision = decision_from_json(j.at("final"), "final");
    auto outcome = outcome_from_name(j.at("outcome").get<std::string>());
    if (!outcome)
      throw Error("transcript: unknown outcome " +
                  j.at("outcome").get<std::string>());
    t.outcome = *outcome;
  } catch (const json::exception& e) {
    throw Error(std::string("transcript: ") + e.what());
  }
  return t;
}

void save_transcripts(const std::string& path,
                      const std::vector<DebateTranscript>& transcripts) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  for (const DebateTranscript& t : transcripts)
    out << serialize_transcript(t) << "\n";
  if (!out) throw Error("write failed: " + path);
}

std::vector<DebateTranscript> load_transcripts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open transcript file: " + path);
  std::vector<DebateTranscript> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_transcript(line));
  }
  return out;
}

}  // namespace wneval
