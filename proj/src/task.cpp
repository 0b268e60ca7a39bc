#include "wneval/task.hpp"

namespace wneval {

namespace {

constexpr std::array<std::string_view, kTaskCount> kNames = {
    "IdiomTranslation",        "LexicalAmbiguity", "TerminologyLocalization",
    "TenseConsistency",        "ZeroPronounTranslation", "CulturalSafety",
};

constexpr std::array<std::string_view, kTaskCount> kLabels = {
    "Idiom", "Ambiguity", "Terminology", "Tense", "Zero Pronoun",
    "Cultural Safety",
};

}  // namespace

std::string_view task_name(TaskDimension task) {
  return kNames[task_index(task)];
}

std::string_view task_label(TaskDimension task) {
  return kLabels[task_index(task)];
}

std::optional<TaskDimension> task_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTaskCount; ++i) {
    if (kNames[i] == name) {
      return kAllTasks[i];
    }
  }
  return std::nullopt;
}

}  // namespace wneval
