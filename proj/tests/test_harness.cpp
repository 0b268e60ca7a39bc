#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wneval/error.hpp"
#include "wneval/harness.hpp"

using namespace wneval;

TEST_SUITE_BEGIN("harness");

namespace {

DebateTranscript transcript_with(const std::string& item_id,
                                 const std::string& system, TaskDimension task,
                                 int s, int g1, int g2) {
  DebateTranscript t;
  t.item_id = item_id;
  t.system = system;
  t.task = task;
  t.final_decision = {s, g1, g2, "fixture"};
  t.outcome = DebateOutcome::Consensus;
  return t;
}

AnnotationRecord annotation(const std::string& item_id,
                            const std::string& system,
                            const std::string& annotator, int s, int g1,
                            int g2) {
  AnnotationRecord a;
  a.item_id = item_id;
  a.system = system;
  a.annotator = annotator;
  a.specific = s;
  a.general1 = g1;
  a.general2 = g2;
  return a;
}

ScoreRecord engine_score(const std::string& item_id, const std::string& system,
                         int s, int g1, int g2) {
  ScoreRecord r;
  r.item_id = item_id;
  r.system = system;
  r.decision = DecisionVector{s, g1, g2, ""};
  return r;
}

ScoreRecord scalar_score(const std::string& item_id, const std::string& system,
                         double value) {
  ScoreRecord r;
  r.item_id = item_id;
  r.system = system;
  r.score = value;
  return r;
}

const AgreementRow* find_row(const MetaEvalReport& report,
                             const std::string& metric, const std::string& kind,
                             const std::string& annotator) {
  for (const AgreementRow& row : report.agreements) {
    if (row.metric == metric && row.kind == kind && row.annotator == annotator)
      return &row;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("score records expose a scalar or a decision total") {
  CHECK(scalar_score("i1", "s", 0.42).total() == doctest::Approx(0.42));
  CHECK(engine_score("i1", "s", 2, 1, 0).total() == doctest::Approx(3.0));
  ScoreRecord empty;
  empty.item_id = "i1";
  empty.system = "s";
  CHECK_THROWS_AS(empty.total(), Error);
}

TEST_CASE("score files accept scalar and vector records") {
  auto records = parse_scores(
      "{\"item_id\": \"i1\", \"system\": \"sysA\", \"score\": 0.5}\n"
      "\n"
      "{\"item_id\": \"i2\", \"system\": \"sysA\", \"specific\": 2, "
      "\"general1\": 1, \"general2\": 0, \"rationale\": \"why\"}\n",
      "scores.jsonl");
  REQUIRE(records.size() == 2);
  CHECK(records[0].score == 0.5);
  CHECK_FALSE(records[0].decision.has_value());
  REQUIRE(records[1].decision.has_value());
  CHECK(records[1].decision->specific == 2);
  CHECK(records[1].decision->rationale == "why");
  CHECK_FALSE(records[1].score.has_value());
}

TEST_CASE("score files reject mixed, empty and out-of-range records") {
  CHECK_THROWS_WITH_AS(
      parse_scores("{\"item_id\": \"i\", \"system\": \"s\", \"score\": 1, "
                   "\"specific\": 1}\n",
                   "f.jsonl"),
      doctest::Contains("f.jsonl:1"), Error);
  CHECK_THROWS_WITH_AS(
      parse_scores("{\"item_id\": \"i\", \"system\": \"s\"}\n", "f.jsonl"),
      doctest::Contains("neither"), Error);
  CHECK_THROWS_WITH_AS(
      parse_scores("{\"item_id\": \"i\", \"system\": \"s\", \"specific\": 3, "
                   "\"general1\": 0, \"general2\": 0}\n",
                   "f.jsonl"),
      doctest::Contains("expected 0, 1 or 2"), Error);
  CHECK_THROWS_AS(parse_scores("not json\n", "f.jsonl"), Error);
  CHECK_THROWS_AS(
      parse_scores("{\"system\": \"s\", \"score\": 1}\n", "f.jsonl"), Error);
}

TEST_CASE("score serialization round-trips") {
  std::vector<ScoreRecord> records{scalar_score("i1", "sysA", 0.25),
                                   engine_score("i2", "sysB", 1, 2, 0)};
  records[1].decision->rationale = "kept";
  auto text = serialize_scores(records);
  auto back = parse_scores(text, "roundtrip");
  REQUIRE(back.size() == 2);
  CHECK(back[0].score == 0.25);
  CHECK(back[1].decision->general1 == 2);
  CHECK(back[1].decision->rationale == "kept");
  CHECK(serialize_scores(back) == text);
}

TEST_CASE("translation prompts include context only when present") {
  EvaluationItem item;
  item.id = "t1";
  item.source = "他点了点头。";
  auto prompt = build_translation_prompt(item);
  CHECK(prompt.find("Sentence: 他点了点头。") != std::string::npos);
  CHECK(prompt.find("Preceding context:") == std::string::npos);
  CHECK(prompt == build_translation_prompt(item));

  item.context_prev = "她问他是否同意。";
  auto with_context = build_translation_prompt(item);
  CHECK(with_context.find("Preceding context: 她问他是否同意。") !=
        std::string::npos);

  ScriptedBackend backend({"He nodded."});
  CHECK(translate_with_context(backend, item) == "He nodded.");
}

TEST_CASE("display rounding is half-up at two decimals") {
  CHECK(display_round(0.0) == 0.0);
  CHECK(display_round(1.0) == 1.0);
  CHECK(display_round(1.234) == 1.23);
  CHECK(display_round(1.236) == 1.24);
  CHECK(display_round(3.005) == 3.01);
  CHECK(display_round(2.675) == 2.68);
  CHECK(display_round(30.56 / 6.0) == 5.09);
  CHECK(display_round(5.16) == 5.16);
}

TEST_CASE("aggregation averages final sub-scores per system and task") {
  std::vector<DebateTranscript> transcripts{
      transcript_with("i1", "sysA", TaskDimension::IdiomTranslation, 2, 1, 0),
      transcript_with("i2", "sysA", TaskDimension::IdiomTranslation, 1, 1, 1),
      transcript_with("i3", "sysA", TaskDimension::TenseConsistency, 2, 2, 2),
      transcript_with("i1", "sysB", TaskDimension::IdiomTranslation, 0, 0, 1),
  };
  auto board = aggregate(transcripts);
  REQUIRE(board.systems.size() == 2);
  CHECK(board.systems[0].system == "sysA");
  CHECK(board.systems[1].system == "sysB");

  const auto& a = board.systems[0];
  REQUIRE(a.dimensions.size() == 2);
  CHECK(a.dimensions[0].task == TaskDimension::IdiomTranslation);
  CHECK(a.dimensions[0].n_items == 2);
  CHECK(a.dimensions[0].s_avg == doctest::Approx(1.5));
  CHECK(a.dimensions[0].g1_avg == doctest::Approx(1.0));
  CHECK(a.dimensions[0].g2_avg == doctest::Approx(0.5));
  CHECK(a.dimensions[0].sigma == doctest::Approx(3.0));
  CHECK(a.dimensions[1].task == TaskDimension::TenseConsistency);
  CHECK(a.dimensions[1].sigma == doctest::Approx(6.0));
  CHECK(a.average_sigma == doctest::Approx(4.5));

  const auto& b = board.systems[1];
  REQUIRE(b.dimensions.size() == 1);
  CHECK(b.dimensions[0].sigma == doctest::Approx(1.0));
  CHECK(b.average_sigma == doctest::Approx(1.0));

  CHECK(aggregate({}).systems.empty());
}

TEST_CASE("aggregation is order-independent and keeps sigma consistent") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> score(0, 2);
  std::uniform_int_distribution<std::size_t> pick_task(0, kTaskCount - 1);
  std::uniform_int_distribution<int> pick_system(0, 2);
  const char* systems[] = {"alpha", "beta", "gamma"};

  std::vector<DebateTranscript> transcripts;
  for (int i = 0; i < 60; ++i)
    transcripts.push_back(transcript_with(
        "item-" + std::to_string(i), systems[pick_system(rng)],
        kAllTasks[pick_task(rng)], score(rng), score(rng), score(rng)));

  auto board = aggregate(transcripts);
  auto shuffled = transcripts;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto reboard = aggregate(shuffled);

  REQUIRE(board.systems.size() == reboard.systems.size());
  for (const SystemScores& before : board.systems) {
    auto same_name = [&](const SystemScores& s) {
      return s.system == before.system;
    };
    auto after = std::find_if(reboard.systems.begin(), reboard.systems.end(),
                              same_name);
    REQUIRE(after != reboard.systems.end());
    REQUIRE(after->dimensions.size() == before.dimensions.size());
    CHECK(after->average_sigma == before.average_sigma);
    for (std::size_t d = 0; d < before.dimensions.size(); ++d) {
      const DimensionScore& x = before.dimensions[d];
      const DimensionScore& y = after->dimensions[d];
      CHECK(x.task == y.task);
      CHECK(x.n_items == y.n_items);
      CHECK(x.s_avg == y.s_avg);
      CHECK(x.g1_avg == y.g1_avg);
      CHECK(x.g2_avg == y.g2_avg);
      CHECK(x.sigma == y.sigma);
      // Sigma is always the sum of the three unrounded averages.
      CHECK(x.sigma == doctest::Approx(x.s_avg + x.g1_avg + x.g2_avg)
                           .epsilon(1e-12));
      CHECK(x.sigma >= 0.0);
      CHECK(x.sigma <= 6.0);
    }
  }
}

TEST_CASE("the leaderboard table marks absent dimensions") {
  std::vector<DebateTranscript> transcripts{
      transcript_with("i1", "sysA", TaskDimension::CulturalSafety, 1, 1, 1),
  };
  auto table = emit_leaderboard_table(aggregate(transcripts));
  CHECK(table.find("System") != std::string::npos);
  CHECK(table.find("Idiom") != std::string::npos);
  CHECK(table.find("Cultural Safety") != std::string::npos);
  CHECK(table.find("Avg Sigma") != std::string::npos);
  CHECK(table.find("3.00") != std::string::npos);
  CHECK(table.find("-") != std::string::npos);

  auto empty = emit_leaderboard_table(aggregate({}));
  CHECK(empty.find("System") != std::string::npos);
  CHECK(empty.find("\n") == empty.size() - 1);
}

TEST_CASE("leaderboards survive a JSON round trip") {
  std::vector<DebateTranscript> transcripts{
      transcript_with("i1", "sysA", TaskDimension::IdiomTranslation, 2, 1, 0),
      transcript_with("i2", "sysA", TaskDimension::ZeroPronounTranslation, 1,
                      0, 1),
      transcript_with("i1", "sysB", TaskDimension::IdiomTranslation, 1, 1, 1),
  };
  auto board = aggregate(transcripts);
  auto text = serialize_leaderboard(board);
  auto parsed = parse_leaderboard(text);
  CHECK(serialize_leaderboard(parsed) == text);
  REQUIRE(parsed.systems.size() == 2);
  CHECK(parsed.systems[0].system == "sysA");
  CHECK(parsed.systems[0].dimensions[0].n_items == 1);
  CHECK(parsed.systems[0].average_sigma ==
        doctest::Approx(board.systems[0].average_sigma));

  CHECK_THROWS_AS(parse_leaderboard("[]"), Error);
  CHECK_THROWS_AS(
      parse_leaderboard("{\"systems\": [{\"system\": \"x\", "
                        "\"average_sigma\": 1.0, \"dimensions\": "
                        "[{\"task\": \"Bogus\", \"s_avg\": 1, \"g1_avg\": 1, "
                        "\"g2_avg\": 1, \"sigma\": 3, \"n_items\": 1}]}]}"),
      Error);
}

TEST_CASE("meta evaluation reports perfect scores for an exact engine") {
  // Engine output equals both annotators on every pair.
  std::vector<AnnotationRecord> annotations;
  std::vector<ScoreRecord> engine;
  const int scores[4][3] = {{2, 1, 0}, {1, 1, 1}, {0, 0, 1}, {2, 2, 2}};
  for (int i = 0; i < 4; ++i) {
    std::string id = "i" + std::to_string(i);
    annotations.push_back(annotation(id, "sysA", "a1", scores[i][0],
                                     scores[i][1], scores[i][2]));
    annotations.push_back(annotation(id, "sysA", "a2", scores[i][0],
                                     scores[i][1], scores[i][2]));
    engine.push_back(engine_score(id, "sysA", scores[i][0], scores[i][1],
                                  scores[i][2]));
  }

  auto report = meta_eval(annotations, {{"engine", engine}});
  REQUIRE(report.correlations.size() == 1);
  CHECK(report.correlations[0].metric == "engine");
  REQUIRE(report.correlations[0].correlation.spearman.has_value());
  CHECK(*report.correlations[0].correlation.spearman == doctest::Approx(1.0));
  CHECK(*report.correlations[0].correlation.variance_explained_pct ==
        doctest::Approx(100.0));
  CHECK(report.correlations[0].correlation.n == 4);
  CHECK(report.unmatched_keys.empty());

  // 4 kinds x (2 annotators + pooled).
  CHECK(report.agreements.size() == 12);
  const auto* row = find_row(report, "engine", "total", "pooled");
  REQUIRE(row != nullptr);
  CHECK(row->n == 8);
  CHECK(*row->report.simple_agreement == doctest::Approx(1.0));
  CHECK(*row->report.cohen_kappa == doctest::Approx(1.0));
  CHECK(*row->report.agreement_rate == doctest::Approx(1.0));
  REQUIRE(row->report.icc_3_1.has_value());
  CHECK(*row->report.icc_3_1 == doctest::Approx(1.0));

  const auto* per = find_row(report, "engine", "specific", "a1");
  REQUIRE(per != nullptr);
  CHECK(per->n == 4);
  CHECK(*per->report.simple_agreement == doctest::Approx(1.0));
  // Sub-score rows carry no exact-match rate; that is a totals-only
  // statistic.
  CHECK_FALSE(per->report.agreement_rate.has_value());
}

TEST_CASE("scalar score sets get correlations but no agreement rows") {
  std::vector<AnnotationRecord> annotations{
      annotation("i0", "sysA", "a1", 2, 2, 2),
      annotation("i1", "sysA", "a1", 1, 1, 0),
      annotation("i2", "sysA", "a1", 0, 0, 0),
  };
  std::vector<ScoreRecord> bleu{scalar_score("i0", "sysA", 0.9),
                                scalar_score("i1", "sysA", 0.4),
                                scalar_score("i2", "sysA", 0.1)};
  auto report = meta_eval(annotations, {{"bleu", bleu}});
  REQUIRE(report.correlations.size() == 1);
  CHECK(*report.correlations[0].correlation.spearman == doctest::Approx(1.0));
  CHECK(report.agreements.empty());
}

TEST_CASE("correlation uses annotator-averaged totals") {
  // Two annotators disagree; the average orders the items differently
  // from either annotator alone.
  std::vector<AnnotationRecord> annotations{
      annotation("i0", "sysA", "a1", 2, 2, 2),  // total 6
      annotation("i0", "sysA", "a2", 0, 0, 0),  // avg 3
      annotation("i1", "sysA", "a1", 1, 1, 0),  // total 2
      annotation("i1", "sysA", "a2", 2, 2, 2),  // avg 4
  };
  std::vector<ScoreRecord> metric{scalar_score("i0", "sysA", 1.0),
                                  scalar_score("i1", "sysA", 2.0)};
  auto report = meta_eval(annotations, {{"m", metric}});
  // Averages are (3, 4) while the metric is (1, 2): perfect rank match.
  CHECK(*report.correlations[0].correlation.spearman == doctest::Approx(1.0));
}

TEST_CASE("meta evaluation flags unmatched keys and thin alignments") {
  std::vector<AnnotationRecord> annotations{
      annotation("i0", "sysA", "a1", 1, 1, 1),
      annotation("i1", "sysA", "a1", 2, 2, 2),
  };
  std::vector<ScoreRecord> engine{
      engine_score("i0", "sysA", 1, 1, 1),
      engine_score("i1", "sysA", 2, 2, 2),
      engine_score("i9", "sysA", 0, 0, 0),
      engine_score("i0", "sysZ", 0, 0, 0),
  };
  auto report = meta_eval(annotations, {{"engine", engine}});
  REQUIRE(report.unmatched_keys.size() == 2);
  CHECK(report.unmatched_keys[0] == "engine: i9|sysA");
  CHECK(report.unmatched_keys[1] == "engine: i0|sysZ");

  std::vector<ScoreRecord> thin{engine_score("i0", "sysA", 1, 1, 1),
                                engine_score("i9", "sysA", 0, 0, 0)};
  CHECK_THROWS_WITH_AS(meta_eval(annotations, {{"thin", thin}}),
                       doctest::Contains("fewer than 2"), Error);

  CHECK_THROWS_AS(meta_eval({}, {{"engine", engine}}), Error);

  auto dup_ann = annotations;
  dup_ann.push_back(annotation("i0", "sysA", "a1", 0, 0, 0));
  CHECK_THROWS_WITH_AS(meta_eval(dup_ann, {{"engine", engine}}),
                       doctest::Contains("duplicate annotation"), Error);

  auto dup_engine = engine;
  dup_engine.push_back(engine_score("i0", "sysA", 2, 2, 2));
  CHECK_THROWS_WITH_AS(meta_eval(annotations, {{"engine", dup_engine}}),
                       doctest::Contains("duplicate score"), Error);
}

TEST_CASE("annotators with a single overlapping pair are skipped") {
  std::vector<AnnotationRecord> annotations{
      annotation("i0", "sysA", "a1", 1, 1, 1),
      annotation("i1", "sysA", "a1", 2, 2, 2),
      annotation("i2", "sysA", "a1", 0, 1, 0),
      annotation("i0", "sysA", "a2", 1, 1, 1),  // a2 rated only one item
  };
  std::vector<ScoreRecord> engine{
      engine_score("i0", "sysA", 1, 1, 1),
      engine_score("i1", "sysA", 2, 2, 2),
      engine_score("i2", "sysA", 0, 1, 0),
  };
  auto report = meta_eval(annotations, {{"engine", engine}});
  CHECK(find_row(report, "engine", "total", "a1") != nullptr);
  CHECK(find_row(report, "engine", "total", "a2") == nullptr);
  const auto* pooled = find_row(report, "engine", "total", "pooled");
  REQUIRE(pooled != nullptr);
  CHECK(pooled->n == 3);
  // Fewer than two subjects carry both annotators, so the multi-rater
  // grid is unavailable and the pooled ICC stays the paired one; the
  // engine mirrors a1 exactly, so it is 1.
  REQUIRE(pooled->report.icc_3_1.has_value());
  CHECK(*pooled->report.icc_3_1 == doctest::Approx(1.0));
}

TEST_CASE("agreement rows match direct statistic calls on random data") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> lab(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6;
    std::vector<AnnotationRecord> annotations;
    std::vector<ScoreRecord> engine;
    std::vector<int> engine_totals, human_totals;
    std::vector<int> engine_spec, human_spec;
    for (int i = 0; i < n; ++i) {
      std::string id = "i" + std::to_string(i);
      int hs = lab(rng), hg1 = lab(rng), hg2 = lab(rng);
      int es = lab(rng), eg1 = lab(rng), eg2 = lab(rng);
      annotations.push_back(annotation(id, "sysA", "a1", hs, hg1, hg2));
      engine.push_back(engine_score(id, "sysA", es, eg1, eg2));
      engine_totals.push_back(es + eg1 + eg2);
      human_totals.push_back(hs + hg1 + hg2);
      engine_spec.push_back(es);
      human_spec.push_back(hs);
    }
    auto report = meta_eval(annotations, {{"engine", engine}});

    const auto* total_row = find_row(report, "engine", "total", "a1");
    REQUIRE(total_row != nullptr);
    CHECK(*total_row->report.simple_agreement ==
          doctest::Approx(oracles::simple_agreement(engine_totals,
                                                    human_totals))
              .epsilon(1e-9));
    CHECK(*total_row->report.cohen_kappa ==
          doctest::Approx(oracles::cohen_kappa(engine_totals, human_totals, 7))
              .epsilon(1e-9));
    CHECK(*total_row->report.quadratic_weighted_kappa ==
          doctest::Approx(oracles::weighted_kappa(engine_totals, human_totals,
                                                  7, true))
              .epsilon(1e-9));

    const auto* spec_row = find_row(report, "engine", "specific", "a1");
    REQUIRE(spec_row != nullptr);
    CHECK(*spec_row->report.cohen_kappa ==
          doctest::Approx(oracles::cohen_kappa(engine_spec, human_spec, 3))
              .epsilon(1e-9));
  }
}

TEST_CASE("meta tables and JSON cover every row") {
  std::vector<AnnotationRecord> annotations{
      annotation("i0", "sysA", "a1", 2, 1, 0),
      annotation("i1", "sysA", "a1", 1, 1, 1),
      annotation("i2", "sysA", "a1", 0, 0, 0),
  };
  std::vector<ScoreRecord> engine{engine_score("i0", "sysA", 2, 1, 0),
                                  engine_score("i1", "sysA", 1, 0, 1),
                                  engine_score("i2", "sysA", 0, 0, 0)};
  std::vector<ScoreRecord> bleu{scalar_score("i0", "sysA", 0.8),
                                scalar_score("i1", "sysA", 0.5),
                                scalar_score("i8", "sysA", 0.2)};
  auto report =
      meta_eval(annotations, {{"engine", engine}, {"bleu", bleu}});

  auto table = emit_meta_table(report);
  CHECK(table.find("Correlation with averaged human totals") !=
        std::string::npos);
  CHECK(table.find("Agreement with annotators") != std::string::npos);
  CHECK(table.find("engine") != std::string::npos);
  CHECK(table.find("bleu") != std::string::npos);
  CHECK(table.find("pooled") != std::string::npos);
  CHECK(table.find("Unmatched keys") != std::string::npos);
  CHECK(table.find("bleu: i8|sysA") != std::string::npos);

  auto parsed = nlohmann::json::parse(serialize_meta(report));
  CHECK(parsed.at("correlations").size() == 2);
  CHECK(parsed.at("agreements").size() == report.agreements.size());
  CHECK(parsed.at("unmatched_keys").size() == 1);
  // Single annotator: per-annotator and pooled rows agree on n.
  for (const auto& row : parsed.at("agreements")) {
    CHECK(row.at("n").get<int>() == 3);
    if (row.at("kind") == "specific") CHECK(row.at("agreement_rate").is_null());
    if (row.at("kind") == "total" && row.at("annotator") == "pooled")
      CHECK(row.at("agreement_rate").is_number());
  }
}

TEST_CASE("config files parse with defaults and validation") {
  const std::string text = R"({
    "backends": {
      "main": {
        "endpoint_url": "https://api.example.test/v1/chat/completions",
        "model_name": "orchid-large",
        "api_key_env": "ORCHID_KEY",
        "timeout_ms": 12000,
        "max_retries": 4,
        "retry_backoff_ms": [100, 400],
        "max_inflight": 8
      },
      "aux": {
        "endpoint_url": "https://aux.example.test/v1/chat/completions",
        "model_name": "orchid-mini"
      }
    },
    "default_backend": "main",
    "debate": {"max_rounds": 5, "exemplar_limit": 1, "knowledge": "notes"}
  })";
  auto config = parse_config(text, "config.json");
  REQUIRE(config.backends.count("main") == 1);
  const auto& main_backend = config.backends.at("main");
  CHECK(main_backend.endpoint_url ==
        "https://api.example.test/v1/chat/completions");
  CHECK(main_backend.model_name == "orchid-large");
  CHECK(main_backend.api_key_env == "ORCHID_KEY");
  CHECK(main_backend.timeout.count() == 12000);
  CHECK(main_backend.max_retries == 4);
  REQUIRE(main_backend.retry_backoff.size() == 2);
  CHECK(main_backend.retry_backoff[1].count() == 400);
  CHECK(main_backend.max_inflight == 8);

  // Unspecified fields keep their defaults.
  const auto& aux = config.backends.at("aux");
  CHECK(aux.timeout.count() == 30000);
  CHECK(aux.max_retries == 2);
  CHECK(aux.max_inflight == 4);

  CHECK(config.default_backend == "main");
  CHECK(config.debate.max_rounds == 5);
  CHECK(config.debate.exemplar_limit == 1);
  REQUIRE(config.debate.knowledge.has_value());
  CHECK(*config.debate.knowledge == "notes");

  auto minimal = parse_config("{}", "empty.json");
  CHECK(minimal.backends.empty());
  CHECK(minimal.default_backend.empty());
  CHECK(minimal.debate.max_rounds == 3);
  CHECK(minimal.debate.exemplar_limit == 2);
}

TEST_CASE("config errors carry the origin and the offending field") {
  CHECK_THROWS_AS(parse_config("[]", "c.json"), Error);
  CHECK_THROWS_WITH_AS(
      parse_config("{\"backends\": {\"b\": {\"model_name\": \"m\"}}}",
                   "c.json"),
      doctest::Contains("endpoint_url"), Error);
  CHECK_THROWS_WITH_AS(
      parse_config("{\"default_backend\": \"ghost\"}", "c.json"),
      doctest::Contains("ghost"), Error);
  CHECK_THROWS_WITH_AS(
      parse_config("{\"debate\": {\"max_rounds\": 0}}", "c.json"),
      doctest::Contains("max_rounds"), Error);
  const std::string bad_backoff = R"({"backends": {"b": {
    "endpoint_url": "https://x.test/v1", "model_name": "m",
    "retry_backoff_ms": [-5]}}})";
  CHECK_THROWS_WITH_AS(parse_config(bad_backoff, "c.json"),
                       doctest::Contains("retry_backoff_ms"), Error);
  CHECK_THROWS_WITH_AS(
      parse_config("{\"debate\": {\"knowledge\": 7}}", "c.json"),
      doctest::Contains("knowledge"), Error);
}

TEST_SUITE_END();
