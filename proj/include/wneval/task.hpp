#ifndef WNEVAL_TASK_HPP
#define WNEVAL_TASK_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace wneval {

/// The six phenomena a web-novel translation is scored on. The enum order
/// is the canonical report order; do not reorder.
enum class TaskDimension {
  IdiomTranslation,
  LexicalAmbiguity,
  TerminologyLocalization,
  TenseConsistency,
  ZeroPronounTranslation,
  CulturalSafety,
};

inline constexpr std::size_t kTaskCount = 6;

inline constexpr std::array<TaskDimension, kTaskCount> kAllTasks = {
    TaskDimension::IdiomTranslation,        TaskDimension::LexicalAmbiguity,
    TaskDimension::TerminologyLocalization, TaskDimension::TenseConsistency,
    TaskDimension::ZeroPronounTranslation,  TaskDimension::CulturalSafety,
};

/// Canonical ASCII identifier used in data files ("IdiomTranslation", ...).
std::string_view task_name(TaskDimension task);

/// Short human label used in report tables ("Idiom", "Cultural Safety", ...).
std::string_view task_label(TaskDimension task);

/// Strict parse of a canonical identifier; anything else is nullopt.
std::optional<TaskDimension> task_from_name(std::string_view name);

inline std::size_t task_index(TaskDimension task) {
  return static_cast<std::size_t>(task);
}

}  // namespace wneval

#endif  // WNEVAL_TASK_HPP
