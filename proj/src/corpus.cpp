#include "wneval/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "wneval/error.hpp"

namespace wneval {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_at(const std::string& origin, std::size_t line,
                          const std::string& what) {
  throw Error(origin + ":" + std::to_string(line) + ": " + what);
}

// Calls `handle(record, line_number)` for every non-blank line.
template <typename Handler>
void for_each_record(const std::string& content, const std::string& origin,
                     Handler&& handle) {
  std::istringstream stream(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    ordered_json record;
    try {
      record = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      fail_at(origin, line_no, std::string("invalid JSON: ") + ex.what());
    }
    if (!record.is_object()) {
      fail_at(origin, line_no, "record is not a JSON object");
    }
    handle(record, line_no);
  }
}

std::string require_string(const ordered_json& record, const char* field,
                           const std::string& origin, std::size_t line) {
  if (!record.contains(field) || !record.at(field).is_string()) {
    fail_at(origin, line,
            std::string("missing or non-string field \"") + field + "\"");
  }
  return record.at(field).get<std::string>();
}

std::optional<std::string> optional_string(const ordered_json& record,
                                           const char* field,
                                           const std::string& origin,
                                           std::size_t line) {
  if (!record.contains(field) || record.at(field).is_null()) {
    return std::nullopt;
  }
  if (!record.at(field).is_string()) {
    fail_at(origin, line, std::string("field \"") + field +
                              "\" must be a string or null");
  }
  return record.at(field).get<std::string>();
}

int require_score(const ordered_json& record, const char* field,
                  const std::string& origin, std::size_t line) {
  if (!record.contains(field) || !record.at(field).is_number_integer()) {
    fail_at(origin, line,
            std::string("missing or non-integer field \"") + field + "\"");
  }
  const int value = record.at(field).get<int>();
  if (value < 0 || value > 2) {
    fail_at(origin, line, std::string("field \"") + field + "\" is " +
                              std::to_string(value) + ", must be 0, 1, or 2");
  }
  return value;
}

}  // namespace

int total_score(const AnnotationRecord& record) {
  return record.specific + record.general1 + record.general2;
}

std::vector<EvaluationItem> parse_corpus(const std::string& content,
                                         const std::string& origin) {
  std::vector<EvaluationItem> items;
  std::unordered_set<std::string> seen_ids;
  for_each_record(content, origin, [&](const ordered_json& record,
                                       std::size_t line) {
    EvaluationItem item;
    item.id = require_string(record, "id", origin, line);
    if (item.id.empty()) {
      fail_at(origin, line, "field \"id\" must be non-empty");
    }
    if (!seen_ids.insert(item.id).second) {
      fail_at(origin, line, "duplicate item id \"" + item.id + "\"");
    }
    const std::string task = require_string(record, "task", origin, line);
    const auto parsed = task_from_name(task);
    if (!parsed) {
      fail_at(origin, line, "unknown task name \"" + task + "\"");
    }
    item.task = *parsed;
    item.source = require_string(record, "source", origin, line);
    if (item.source.empty()) {
      fail_at(origin, line, "field \"source\" must be non-empty");
    }
    item.context_prev = optional_string(record, "context_prev", origin, line);
    item.reference = optional_string(record, "reference", origin, line);
    items.push_back(std::move(item));
  });
  return items;
}

std::vector<TranslationRecord> parse_translations(
    const std::string& content, const std::string& origin,
    const std::vector<EvaluationItem>& items) {
  std::unordered_set<std::string> known_ids;
  for (const auto& item : items) {
    known_ids.insert(item.id);
  }
  std::vector<TranslationRecord> records;
  for_each_record(content, origin,
                  [&](const ordered_json& record, std::size_t line) {
                    TranslationRecord rec;
                    rec.item_id = require_string(record, "item_id", origin, line);
                    if (known_ids.find(rec.item_id) == known_ids.end()) {
                      fail_at(origin, line,
                              "item_id \"" + rec.item_id +
                                  "\" does not resolve to a corpus item");
                    }
                    rec.system = require_string(record, "system", origin, line);
                    rec.translation =
                        require_string(record, "translation", origin, line);
                    records.push_back(std::move(rec));
                  });
  return records;
}

std::vector<AnnotationRecord> parse_annotations(const std::string& content,
                                                const std::string& origin) {
  std::vector<AnnotationRecord> records;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for_each_record(content, origin, [&](const ordered_json& record,
                                       std::size_t line) {
    AnnotationRecord rec;
    rec.item_id = require_string(record, "item_id", origin, line);
    rec.system = require_string(record, "system", origin, line);
    rec.annotator = require_string(record, "annotator", origin, line);
    if (!seen.insert({rec.item_id, rec.system, rec.annotator}).second) {
      fail_at(origin, line,
              "duplicate annotation for (" + rec.item_id + ", " + rec.system +
                  ", " + rec.annotator + ")");
    }
    rec.specific = require_score(record, "specific", origin, line);
    rec.general1 = require_score(record, "general1", origin, line);
    rec.general2 = require_score(record, "general2", origin, line);
    rec.note = optional_string(record, "note", origin, line);
    records.push_back(std::move(rec));
  });
  return records;
}

std::string read_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  if (stream.bad()) {
    throw Error("I/O failure reading " + path);
  }
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error("cannot open " + path + " for writing");
  }
  stream << content;
  if (!stream) {
    throw Error("I/O failure writing " + path);
  }
}

std::vector<EvaluationItem> load_corpus(const std::string& path) {
  return parse_corpus(read_file(path), path);
}

std::vector<TranslationRecord> load_translations(
    const std::string& path, const std::vector<EvaluationItem>& items) {
  return parse_translations(read_file(path), path, items);
}

std::vector<AnnotationRecord> load_annotations(const std::string& path) {
  return parse_annotations(read_file(path), path);
}

std::string serialize_corpus(const std::vector<EvaluationItem>& items) {
  std::string out;
  for (const auto& item : items) {
    ordered_json record;
    record["id"] = item.id;
    record["task"] = std::string(task_name(item.task));
    record["source"] = item.source;
    record["context_prev"] =
        item.context_prev ? ordered_json(*item.context_prev) : ordered_json();
    record["reference"] =
        item.reference ? ordered_json(*item.reference) : ordered_json();
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::string serialize_translations(
    const std::vector<TranslationRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    ordered_json record;
    record["item_id"] = rec.item_id;
    record["system"] = rec.system;
    record["translation"] = rec.translation;
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::string serialize_annotations(
    const std::vector<AnnotationRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    ordered_json record;
    record["item_id"] = rec.item_id;
    record["system"] = rec.system;
    record["annotator"] = rec.annotator;
    record["specific"] = rec.specific;
    record["general1"] = rec.general1;
    record["general2"] = rec.general2;
    record["note"] = rec.note ? ordered_json(*rec.note) : ordered_json();
    out += record.dump();
    out += '\n';
  }
  return out;
}

void save_corpus(const std::string& path,
                 const std::vector<EvaluationItem>& items) {
  write_file(path, serialize_corpus(items));
}

void save_translations(const std::string& path,
                       const std::vector<TranslationRecord>& records) {
  write_file(path, serialize_translations(records));
}

}  // namespace wneval
