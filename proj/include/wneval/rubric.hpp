#ifndef WNEVAL_RUBRIC_HPP
#define WNEVAL_RUBRIC_HPP

#include <array>
#include <string>
#include <vector>

#include "wneval/decision.hpp"
#include "wneval/task.hpp"

namespace wneval {

enum class MetricKind { Specific, General1, General2 };

std::string_view metric_kind_name(MetricKind kind);

/// One scoring criterion: a named metric with per-level (0/1/2) descriptions.
struct MetricSpec {
  std::string name;
  MetricKind kind = MetricKind::Specific;
  std::array<std::string, 3> criteria;  // indexed by score level

  const std::string& criterion(int level) const { return criteria.at(level); }
};

/// The complete per-dimension evaluation schema: the dimension-specific
/// metric plus the two general ones.
struct RuleSet {
  TaskDimension task = TaskDimension::IdiomTranslation;
  MetricSpec specific;
  MetricSpec general1;
  MetricSpec general2;

  const MetricSpec& metric(MetricKind kind) const;
};

/// A scored reference case shown to agents as a calibration example.
struct GoldExample {
  TaskDimension task = TaskDimension::IdiomTranslation;
  std::string source;
  std::string translation;
  int specific = 0;
  int general1 = 0;
  int general2 = 0;
  std::string commentary;
};

/// Holds the rule sets and exemplars for all six dimensions. The built-in
/// content ships with the library; a line-delimited override file can
/// replace individual rule sets for deployments that revise criteria.
class RubricRegistry {
 public:
  /// Registry populated with the built-in rubric and exemplars.
  static RubricRegistry builtin();

  /// Total for every TaskDimension value.
  const RuleSet& ruleset_for(TaskDimension task) const;

  /// Up to `limit` examples for the task, in a fixed order.
  std::vector<GoldExample> exemplars_for(TaskDimension task,
                                         std::size_t limit) const;

  /// Applies override records (one JSON object per line, schema:
  /// {"task", "specific": {"name", "criteria": {"0","1","2"}}, ...}).
  /// Throws wneval::Error with line numbers on malformed input.
  void apply_overrides(const std::string& content, const std::string& origin);
  void apply_overrides_file(const std::string& path);

  void add_exemplar(GoldExample example);

 private:
  RubricRegistry() = default;

  std::array<RuleSet, kTaskCount> rulesets_;
  std::vector<GoldExample> exemplars_;
};

/// Empty result means the decision is in range for every metric; otherwise
/// one entry per offending metric ("specific", "general1", "general2").
std::vector<std::string> validate_decision(const DecisionVector& decision,
                                           const RuleSet& rules);

}  // namespace wneval

#endif  // WNEVAL_RUBRIC_HPP
