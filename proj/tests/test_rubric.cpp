#include <doctest.h>

#include "wneval/error.hpp"
#include "wneval/rubric.hpp"

using namespace wneval;

TEST_SUITE_BEGIN("rubric");

TEST_CASE("builtin registry covers all six dimensions with named metrics") {
  RubricRegistry registry = RubricRegistry::builtin();
  for (TaskDimension task : kAllTasks) {
    const RuleSet& rules = registry.ruleset_for(task);
    CHECK(rules.task == task);
    for (MetricKind kind :
         {MetricKind::Specific, MetricKind::General1, MetricKind::General2}) {
      const MetricSpec& spec = rules.metric(kind);
      CHECK_FALSE(spec.name.empty());
      for (int level = 0; level <= 2; ++level)
        CHECK_FALSE(spec.criterion(level).empty());
    }
  }
  CHECK(registry.ruleset_for(TaskDimension::IdiomTranslation).specific.name ==
        "Idiomatic Fidelity & Naturalness");
  CHECK(registry.ruleset_for(TaskDimension::LexicalAmbiguity).general1.name ==
        "Pragmatic Appropriateness");
  CHECK(registry.ruleset_for(TaskDimension::CulturalSafety).general2.name ==
        "Sensitive Information Handling");
  CHECK(registry.ruleset_for(TaskDimension::ZeroPronounTranslation)
            .specific.name == "Ellipsis Referent Recovery Score");
}

TEST_CASE("every dimension ships at least one gold example") {
  RubricRegistry registry = RubricRegistry::builtin();
  for (TaskDimension task : kAllTasks) {
    auto all = registry.exemplars_for(task, 10);
    REQUIRE(all.size() >= 1);
    for (const GoldExample& ex : all) {
      CHECK(ex.task == task);
      CHECK_FALSE(ex.source.empty());
      CHECK_FALSE(ex.translation.empty());
    }
    CHECK(registry.exemplars_for(task, 0).empty());
    CHECK(registry.exemplars_for(task, 1).size() == 1);
  }
}

TEST_CASE("validate_decision flags out-of-range sub-scores by metric name") {
  RubricRegistry registry = RubricRegistry::builtin();
  const RuleSet& rules =
      registry.ruleset_for(TaskDimension::TerminologyLocalization);

  DecisionVector ok{2, 1, 0, "fine"};
  CHECK(validate_decision(ok, rules).empty());

  DecisionVector bad{2, 3, -1, ""};
  auto violations = validate_decision(bad, rules);
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].find("general1") != std::string::npos);
  CHECK(violations[0].find(rules.general1.name) != std::string::npos);
  CHECK(violations[1].find("general2") != std::string::npos);
}

TEST_CASE("overrides replace whole rule sets and reject unknown tasks") {
  RubricRegistry registry = RubricRegistry::builtin();
  const std::string untouched =
      registry.ruleset_for(TaskDimension::IdiomTranslation).specific.name;
  registry.apply_overrides(
      R"({"task":"TenseConsistency",)"
      R"("specific":{"name":"Revised Tense","criteria":{"0":"zero","1":"one","2":"two"}},)"
      R"("general1":{"name":"Revised G1","criteria":{"0":"a","1":"b","2":"c"}},)"
      R"("general2":{"name":"Revised G2","criteria":{"0":"d","1":"e","2":"f"}}})"
      "\n",
      "mem");
  const RuleSet& rules = registry.ruleset_for(TaskDimension::TenseConsistency);
  CHECK(rules.specific.name == "Revised Tense");
  CHECK(rules.specific.criterion(0) == "zero");
  CHECK(rules.specific.criterion(2) == "two");
  CHECK(rules.general1.criterion(1) == "b");
  // Other dimensions keep their built-in content.
  CHECK(registry.ruleset_for(TaskDimension::IdiomTranslation).specific.name ==
        untouched);

  // A record must carry all three metrics; a bare criteria map is not one.
  CHECK_THROWS_WITH_AS(
      registry.apply_overrides(
          R"({"task":"TenseConsistency","specific":{"0":"x","1":"y","2":"z"}})"
          "\n",
          "mem"),
      doctest::Contains("needs \"name\" and \"criteria\""), Error);
  CHECK_THROWS_AS(
      registry.apply_overrides(R"({"task":"NoSuchTask","specific":{}})" "\n",
                               "mem"),
      Error);
  CHECK_THROWS_AS(registry.apply_overrides("not json\n", "mem"), Error);
}

TEST_SUITE_END();
