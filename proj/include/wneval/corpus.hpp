#ifndef WNEVAL_CORPUS_HPP
#define WNEVAL_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "wneval/task.hpp"

namespace wneval {

/// One source sentence to be translated and judged. `reference` is optional:
/// the debate engine scores against source + rubric, while lexical metrics
/// need it and fail loudly when it is missing.
struct EvaluationItem {
  std::string id;
  TaskDimension task = TaskDimension::IdiomTranslation;
  std::string source;
  std::optional<std::string> context_prev;
  std::optional<std::string> reference;
};

/// A system's candidate translation of one item.
struct TranslationRecord {
  std::string item_id;
  std::string system;
  std::string translation;
};

/// One human rating of one (item, system) pair.
struct AnnotationRecord {
  std::string item_id;
  std::string system;
  std::string annotator;
  int specific = 0;
  int general1 = 0;
  int general2 = 0;
  std::optional<std::string> note;
};

/// specific + general1 + general2, in [0, 6].
int total_score(const AnnotationRecord& record);

// Line-delimited JSON loaders. All of them throw wneval::Error with the
// offending line number on malformed input.

std::vector<EvaluationItem> load_corpus(const std::string& path);
std::vector<EvaluationItem> parse_corpus(const std::string& content,
                                         const std::string& origin);

/// `items` is used to reject translations of unknown item ids.
std::vector<TranslationRecord> load_translations(
    const std::string& path, const std::vector<EvaluationItem>& items);
std::vector<TranslationRecord> parse_translations(
    const std::string& content, const std::string& origin,
    const std::vector<EvaluationItem>& items);

std::vector<AnnotationRecord> load_annotations(const std::string& path);
std::vector<AnnotationRecord> parse_annotations(const std::string& content,
                                                const std::string& origin);

// Serializers emitting one record per line, inverse of the parsers above.

std::string serialize_corpus(const std::vector<EvaluationItem>& items);
std::string serialize_translations(const std::vector<TranslationRecord>& records);
std::string serialize_annotations(const std::vector<AnnotationRecord>& records);

void save_corpus(const std::string& path,
                 const std::vector<EvaluationItem>& items);
void save_translations(const std::string& path,
                       const std::vector<TranslationRecord>& records);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace wneval

#endif  // WNEVAL_CORPUS_HPP
