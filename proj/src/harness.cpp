#include "wneval/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wneval/error.hpp"

namespace wneval {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail_at(const std::string& origin, int line,
                          const std::string& what) {
  throw Error(origin + ":" + std::to_string(line) + ": " + what);
}

std::string require_string(const json& j, const char* field,
                           const std::string& origin, int line) {
  if (!j.contains(field) || !j[field].is_string())
    fail_at(origin, line, std::string("missing or non-string \"") + field +
                              "\"");
  return j[field].get<std::string>();
}

int require_score(const json& j, const char* field, const std::string& origin,
                  int line) {
  if (!j.contains(field) || !j[field].is_number_integer())
    fail_at(origin, line, std::string("missing or non-integer \"") + field +
                              "\"");
  int v = j[field].get<int>();
  if (!valid_score(v))
    fail_at(origin, line, std::string("\"") + field + "\" is " +
                              std::to_string(v) + ", expected 0, 1 or 2");
  return v;
}

}  // namespace

double ScoreRecord::total() const {
  if (score) return *score;
  if (decision) return static_cast<double>(decision->total());
  throw Error("score record for (" + item_id + ", " + system +
              ") carries neither a scalar nor a decision vector");
}

std::vector<ScoreRecord> parse_scores(const std::string& content,
                                      const std::string& origin) {
  std::vector<ScoreRecord> records;
  std::istringstream in(content);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      fail_at(origin, line_no, "not a JSON object");

    ScoreRecord r;
    r.item_id = require_string(j, "item_id", origin, line_no);
    r.system = require_string(j, "system", origin, line_no);
    const bool scalar = j.contains("score");
    const bool vector_form = j.contains("specific") || j.contains("general1") ||
                             j.contains("general2");
    if (scalar && vector_form)
      fail_at(origin, line_no,
              "record mixes scalar \"score\" with vector sub-scores");
    if (!scalar && !vector_form)
      fail_at(origin, line_no,
              "record has neither \"score\" nor the three sub-scores");
    if (scalar) {
      if (!j["score"].is_number())
        fail_at(origin, line_no, "\"score\" is not a number");
      r.score = j["score"].get<double>();
      if (!std::isfinite(*r.score))
        fail_at(origin, line_no, "\"score\" is not finite");
    } else {
      DecisionVector d;
      d.specific = require_score(j, "specific", origin, line_no);
      d.general1 = require_score(j, "general1", origin, line_no);
      d.general2 = require_score(j, "general2", origin, line_no);
      if (j.contains("rationale") && j["rationale"].is_string())
        d.rationale = j["rationale"].get<std::string>();
      r.decision = std::move(d);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ScoreRecord> load_scores(const std::string& path) {
  return parse_scores(read_file(path), path);
}

std::string serialize_scores(const std::vector<ScoreRecord>& records) {
  std::string out;
  for (const ScoreRecord& r : records) {
    ordered_json j{{"item_id", r.item_id}, {"system", r.system}};
    if (r.score) {
      j["score"] = *r.score;
    } else if (r.decision) {
      j["specific"] = r.decision->specific;
      j["general1"] = r.decision->general1;
      j["general2"] = r.decision->general2;
      if (!r.decision->rationale.empty()) j["rationale"] = r.decision->rationale;
    }
    out += j.dump();
    out += "\n";
  }
  return out;
}

void save_scores(const std::string& path,
                 const std::vector<ScoreRecord>& records) {
  write_file(path, serialize_scores(records));
}

std::string build_translation_prompt(const EvaluationItem& item) {
  std::string out =
      "You are a professional literary translator.\n\n"
      "Translate the following Chinese web novel sentence into English.\n";
  if (item.context_prev && !item.context_prev->empty())
    out += "Preceding context: " + *item.context_prev + "\n";
  out += "Sentence: " + item.source + "\n\n";
  out += "Reply with the English translation only.";
  return out;
}

std::string translate_with_context(Backend& backend,
                                   const EvaluationItem& item) {
  CompletionRequest req;
  req.user_text = build_translation_prompt(item);
  return backend.complete(req);
}

double display_round(double value) {
  return std::floor(value * 100.0 + 0.5) / 100.0;
}

Leaderboard aggregate(const std::vector<DebateTranscript>& transcripts) {
  struct Acc {
    double s = 0.0, g1 = 0.0, g2 = 0.0;
    std::size_t n = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, std::array<Acc, kTaskCount>> cells;
  for (const DebateTranscript& t : transcripts) {
    auto [it, fresh] = cells.try_emplace(t.system);
    if (fresh) order.push_back(t.system);
    Acc& a = it->second[task_index(t.task)];
    a.s += t.final_decision.specific;
    a.g1 += t.final_decision.general1;
    a.g2 += t.final_decision.general2;
    ++a.n;
  }

  Leaderboard board;
  for (const std::string& system : order) {
    SystemScores scores;
    scores.system = system;
    double sigma_sum = 0.0;
    for (TaskDimension task : kAllTasks) {
      const Acc& a = cells[system][task_index(task)];
      if (a.n == 0) continue;
      DimensionScore d;
      d.task = task;
      d.n_items = a.n;
      d.s_avg = a.s / static_cast<double>(a.n);
      d.g1_avg = a.g1 / static_cast<double>(a.n);
      d.g2_avg = a.g2 / static_cast<double>(a.n);
      d.sigma = d.s_avg + d.g1_avg + d.g2_avg;
      sigma_sum += d.sigma;
      scores.dimensions.push_back(d);
    }
    if (!scores.dimensions.empty())
      scores.average_sigma =
          sigma_sum / static_cast<double>(scores.dimensions.size());
    board.systems.push_back(std::move(scores));
  }
  return board;
}

std::string emit_leaderboard_table(const Leaderboard& board) {
  std::size_t name_width = std::string("System").size();
  for (const SystemScores& s : board.systems)
    name_width = std::max(name_width, s.system.size());

  std::ostringstream out;
  out << std::left;
  out.width(static_cast<std::streamsize>(name_width));
  out << "System";
  for (TaskDimension task : kAllTasks) {
    char cell[32];
    std::snprintf(cell, sizeof cell, "  %15s",
                  std::string(task_label(task)).c_str());
    out << cell;
  }
  out << "  " << "Avg Sigma" << "\n";

  for (const SystemScores& s : board.systems) {
    out.width(static_cast<std::streamsize>(name_width));
    out << s.system;
    for (TaskDimension task : kAllTasks) {
      auto found = std::find_if(s.dimensions.begin(), s.dimensions.end(),
                                [&](const DimensionScore& d) {
                                  return d.task == task;
                                });
      char cell[32];
      if (found == s.dimensions.end())
        std::snprintf(cell, sizeof cell, "  %15s", "-");
      else
        std::snprintf(cell, sizeof cell, "  %15.2f",
                      display_round(found->sigma));
      out << cell;
    }
    char avg[32];
    std::snprintf(avg, sizeof avg, "  %9.2f", display_round(s.average_sigma));
    out << avg << "\n";
  }
  return out.str();
}

std::string serialize_leaderboard(const Leaderboard& board) {
  ordered_json systems = ordered_json::array();
  for (const SystemScores& s : board.systems) {
    ordered_json dims = ordered_json::array();
    for (const DimensionScore& d : s.dimensions) {
      dims.push_back(ordered_json{{"task", task_name(d.task)},
                                  {"s_avg", d.s_avg},
                                  {"g1_avg", d.g1_avg},
                                  {"g2_avg", d.g2_avg},
                                  {"sigma", d.sigma},
                                  {"n_items", d.n_items}});
    }
    systems.push_back(ordered_json{{"system", s.system},
                                   {"average_sigma", s.average_sigma},
                                   {"dimensions", std::move(dims)}});
  }
  return ordered_json{{"systems", std::move(systems)}}.dump(2);
}

Leaderboard parse_leaderboard(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("systems"))
    throw Error("leaderboard: not a JSON object with \"systems\"");
  Leaderboard board;
  try {
    for (const json& sj : j["systems"]) {
      SystemScores s;
      s.system = sj.at("system").get<std::string>();
      s.average_sigma = sj.at("average_sigma").get<double>();
      for (const json& dj : sj.at("dimensions")) {
        DimensionScore d;
        auto task = task_from_name(dj.at("task").get<std::string>());
        if (!task)
          throw Error("leaderboard: unknown task " +
                      dj.at("task").get<std::string>());
        d.task = *task;
        d.s_avg = dj.at("s_avg").get<double>();
        d.g1_avg = dj.at("g1_avg").get<double>();
        d.g2_avg = dj.at("g2_avg").get<double>();
        d.sigma = dj.at("sigma").get<double>();
        d.n_items = dj.at("n_items").get<std::size_t>();
        s.dimensions.push_back(d);
      }
      board.systems.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("leaderboard: ") + e.what());
  }
  return board;
}

namespace {

using Key = std::pair<std::string, std::string>;

std::string key_label(const Key& k) { return k.first + "|" + k.second; }

struct AnnotationTable {
  std::vector<Key> keys;  // first-appearance order
  std::map<Key, std::map<std::string, const AnnotationRecord*>> cells;
  std::vector<std::string> annotators;  // sorted
};

AnnotationTable build_table(const std::vector<AnnotationRecord>& annotations) {
  AnnotationTable t;
  std::set<std::string> names;
  for (const AnnotationRecord& a : annotations) {
    Key k{a.item_id, a.system};
    auto [it, fresh_key] = t.cells.try_emplace(k);
    if (fresh_key) t.keys.push_back(k);
    auto [cell, fresh_cell] = it->second.try_emplace(a.annotator, &a);
    if (!fresh_cell)
      throw Error("meta_eval: duplicate annotation for (" + a.item_id + ", " +
                  a.system + ", " + a.annotator + ")");
    names.insert(a.annotator);
  }
  t.annotators.assign(names.begin(), names.end());
  return t;
}

// kind index: 0 specific, 1 general1, 2 general2, 3 total
constexpr std::array<const char*, 4> kKindNames{"specific", "general1",
                                                "general2", "total"};

int decision_kind_value(const DecisionVector& d, int kind) {
  switch (kind) {
    case 0: return d.specific;
    case 1: return d.general1;
    case 2: return d.general2;
    default: return d.total();
  }
}

int annotation_kind_value(const AnnotationRecord& a, int kind) {
  switch (kind) {
    case 0: return a.specific;
    case 1: return a.general1;
    case 2: return a.general2;
    default: return total_score(a);
  }
}

AgreementReport paired_report(const std::vector<int>& engine,
                              const std::vector<int>& human, int num_classes,
                              const std::optional<double>& rate) {
  Eigen::VectorXi a(static_cast<Eigen::Index>(engine.size()));
  Eigen::VectorXi b(static_cast<Eigen::Index>(human.size()));
  for (std::size_t i = 0; i < engine.size(); ++i) {
    a[static_cast<Eigen::Index>(i)] = engine[i];
    b[static_cast<Eigen::Index>(i)] = human[i];
  }
  AgreementReport r;
  r.simple_agreement = simple_agreement(a, b);
  r.cohen_kappa = cohen_kappa(a, b, num_classes);
  r.linear_weighted_kappa =
      weighted_kappa(a, b, num_classes, KappaWeights::Linear);
  r.quadratic_weighted_kappa =
      weighted_kappa(a, b, num_classes, KappaWeights::Quadratic);
  Eigen::MatrixXd grid(a.size(), 2);
  grid.col(0) = a.cast<double>();
  grid.col(1) = b.cast<double>();
  if (grid.rows() >= 2) r.icc_3_1 = icc_3_1(grid).value;
  r.agreement_rate = rate;
  return r;
}

}  // namespace

MetaEvalReport meta_eval(const std::vector<AnnotationRecord>& annotations,
                         const std::vector<NamedScores>& score_sets) {
  if (annotations.empty()) throw Error("meta_eval: no annotations given");
  AnnotationTable table = build_table(annotations);

  MetaEvalReport report;
  for (const NamedScores& set : score_sets) {
    std::map<Key, const ScoreRecord*> by_key;
    std::vector<Key> set_order;
    for (const ScoreRecord& r : set.records) {
      Key k{r.item_id, r.system};
      auto [it, fresh] = by_key.try_emplace(k, &r);
      if (!fresh)
        throw Error(set.name + ": duplicate score for (" + r.item_id + ", " +
                    r.system + ")");
      set_order.push_back(k);
    }
    for (const Key& k : set_order)
      if (!table.cells.count(k))
        report.unmatched_keys.push_back(set.name + ": " + key_label(k));

    // Aligned keys in annotation order.
    std::vector<Key> aligned;
    for (const Key& k : table.keys)
      if (by_key.count(k)) aligned.push_back(k);
    if (aligned.size() < 2)
      throw Error(set.name + ": fewer than 2 (item, system) pairs align "
                  "with the annotations");

    // Spearman against annotator-averaged human totals.
    Eigen::VectorXd metric(static_cast<Eigen::Index>(aligned.size()));
    Eigen::VectorXd human(static_cast<Eigen::Index>(aligned.size()));
    for (std::size_t i = 0; i < aligned.size(); ++i) {
      metric[static_cast<Eigen::Index>(i)] = by_key[aligned[i]]->total();
      const auto& cell = table.cells[aligned[i]];
      double sum = 0.0;
      for (const auto& [annotator, record] : cell) sum += total_score(*record);
      human[static_cast<Eigen::Index>(i)] =
          sum / static_cast<double>(cell.size());
    }
    report.correlations.push_back(
        {set.name, correlate_with_humans(metric, human)});

    // Agreement statistics for score sets carrying decision vectors.
    std::vector<Key> vec_keys;
    for (const Key& k : aligned)
      if (by_key[k]->decision) vec_keys.push_back(k);
    if (vec_keys.size() < 2) continue;

    for (int kind = 0; kind < 4; ++kind) {
      const int num_classes = kind == 3 ? 7 : 3;
      std::vector<int> pooled_engine, pooled_human;
      std::size_t pooled_rate_matches = 0, pooled_rate_n = 0;
      for (const std::string& annotator : table.annotators) {
        std::vector<int> engine_vals, human_vals;
        std::size_t rate_matches = 0;
        for (const Key& k : vec_keys) {
          auto cell = table.cells[k].find(annotator);
          if (cell == table.cells[k].end()) continue;
          const DecisionVector& d = *by_key[k]->decision;
          engine_vals.push_back(decision_kind_value(d, kind));
          human_vals.push_back(annotation_kind_value(*cell->second, kind));
          if (d.specific == cell->second->specific &&
              d.general1 == cell->second->general1 &&
              d.general2 == cell->second->general2)
            ++rate_matches;
        }
        if (engine_vals.size() < 2) continue;
        std::optional<double> rate;
        if (kind == 3)
          rate = static_cast<double>(rate_matches) /
                 static_cast<double>(engine_vals.size());
        AgreementRow row;
        row.metric = set.name;
        row.kind = kKindNames[kind];
        row.annotator = annotator;
        row.n = static_cast<int>(engine_vals.size());
        row.report = paired_report(engine_vals, human_vals, num_classes, rate);
        report.agreements.push_back(std::move(row));

        pooled_engine.insert(pooled_engine.end(), engine_vals.begin(),
                             engine_vals.end());
        pooled_human.insert(pooled_human.end(), human_vals.begin(),
                            human_vals.end());
        pooled_rate_matches += rate_matches;
        pooled_rate_n += engine_vals.size();
      }
      if (pooled_engine.size() < 2) continue;

      std::optional<double> pooled_rate;
      if (kind == 3)
        pooled_rate = static_cast<double>(pooled_rate_matches) /
                      static_cast<double>(pooled_rate_n);
      AgreementRow pooled;
      pooled.metric = set.name;
      pooled.kind = kKindNames[kind];
      pooled.annotator = "pooled";
      pooled.n = static_cast<int>(pooled_engine.size());
      pooled.report =
          paired_report(pooled_engine, pooled_human, num_classes, pooled_rate);

      // Pooled ICC treats the engine and every annotator as raters over
      // the subjects all of them scored.
      std::vector<Key> full_keys;
      for (const Key& k : vec_keys) {
        if (table.cells[k].size() == table.annotators.size())
          full_keys.push_back(k);
      }
      if (full_keys.size() >= 2) {
        Eigen::MatrixXd grid(
            static_cast<Eigen::Index>(full_keys.size()),
            static_cast<Eigen::Index>(table.annotators.size()) + 1);
        for (std::size_t i = 0; i < full_keys.size(); ++i) {
          const Eigen::Index row = static_cast<Eigen::Index>(i);
          grid(row, 0) = decision_kind_value(*by_key[full_keys[i]]->decision,
                                             kind);
          for (std::size_t a = 0; a < table.annotators.size(); ++a)
            grid(row, static_cast<Eigen::Index>(a) + 1) = annotation_kind_value(
                *table.cells[full_keys[i]].at(table.annotators[a]), kind);
        }
        pooled.report.icc_3_1 = icc_3_1(grid).value;
      }
      report.agreements.push_back(std::move(pooled));
    }
  }
  return report;
}

namespace {

std::string fmt_opt(const std::optional<double>& v, int width, int precision) {
  char buf[32];
  if (v)
    std::snprintf(buf, sizeof buf, "%*.*f", width, precision, *v);
  else
    std::snprintf(buf, sizeof buf, "%*s", width, "-");
  return buf;
}

}  // namespace

std::string emit_meta_table(const MetaEvalReport& report) {
  std::size_t metric_width = std::string("Metric").size();
  for (const MetricCorrelationRow& row : report.correlations)
    metric_width = std::max(metric_width, row.metric.size());
  for (const AgreementRow& row : report.agreements)
    metric_width = std::max(metric_width, row.metric.size());

  std::ostringstream out;
  out << "Correlation with averaged human totals\n";
  char head[128];
  std::snprintf(head, sizeof head, "%-*s  %9s  %8s  %6s\n",
                static_cast<int>(metric_width), "Metric", "Spearman", "Var%",
                "n");
  out << head;
  for (const MetricCorrelationRow& row : report.correlations) {
    char line[160];
    std::snprintf(line, sizeof line, "%-*s  %s  %s  %6d\n",
                  static_cast<int>(metric_width), row.metric.c_str(),
                  fmt_opt(row.correlation.spearman, 9, 4).c_str(),
                  fmt_opt(row.correlation.variance_explained_pct, 8, 1).c_str(),
                  row.correlation.n);
    out << line;
  }

  if (!report.agreements.empty()) {
    out << "\nAgreement with annotators\n";
    std::snprintf(head, sizeof head,
                  "%-*s  %-8s  %-10s  %5s  %6s  %6s  %6s  %6s  %6s  %6s\n",
                  static_cast<int>(metric_width), "Metric", "Kind",
                  "Annotator", "n", "Simple", "Kappa", "LinWK", "QuadWK",
                  "ICC", "Rate");
    out << head;
    for (const AgreementRow& row : report.agreements) {
      char line[256];
      std::snprintf(line, sizeof line,
                    "%-*s  %-8s  %-10s  %5d  %s  %s  %s  %s  %s  %s\n",
                    static_cast<int>(metric_width), row.metric.c_str(),
                    row.kind.c_str(), row.annotator.c_str(), row.n,
                    fmt_opt(row.report.simple_agreement, 6, 3).c_str(),
                    fmt_opt(row.report.cohen_kappa, 6, 3).c_str(),
                    fmt_opt(row.report.linear_weighted_kappa, 6, 3).c_str(),
                    fmt_opt(row.report.quadratic_weighted_kappa, 6, 3).c_str(),
                    fmt_opt(row.report.icc_3_1, 6, 3).c_str(),
                    fmt_opt(row.report.agreement_rate, 6, 3).c_str());
      out << line;
    }
  }

  if (!report.unmatched_keys.empty()) {
    out << "\nUnmatched keys\n";
    for (const std::string& k : report.unmatched_keys) out << "  " << k << "\n";
  }
  return out.str();
}

namespace {

ordered_json opt_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace

std::string serialize_meta(const MetaEvalReport& report) {
  ordered_json correlations = ordered_json::array();
  for (const MetricCorrelationRow& row : report.correlations) {
    correlations.push_back(
        ordered_json{{"metric", row.metric},
                     {"spearman", opt_json(row.correlation.spearman)},
                     {"variance_explained_pct",
                      opt_json(row.correlation.variance_explained_pct)},
                     {"n", row.correlation.n}});
  }
  ordered_json agreements = ordered_json::array();
  for (const AgreementRow& row : report.agreements) {
    agreements.push_back(ordered_json{
        {"metric", row.metric},
        {"kind", row.kind},
        {"annotator", row.annotator},
        {"n", row.n},
        {"simple_agreement", opt_json(row.report.simple_agreement)},
        {"cohen_kappa", opt_json(row.report.cohen_kappa)},
        {"linear_weighted_kappa", opt_json(row.report.linear_weighted_kappa)},
        {"quadratic_weighted_kappa",
         opt_json(row.report.quadratic_weighted_kappa)},
        {"icc_3_1", opt_json(row.report.icc_3_1)},
        {"agreement_rate", opt_json(row.report.agreement_rate)}});
  }
  return ordered_json{{"correlations", std::move(correlations)},
                      {"agreements", std::move(agreements)},
                      {"unmatched_keys", report.unmatched_keys}}
      .dump(2);
}

namespace {

long config_int(const json& j, const char* field, const std::string& origin,
                const std::string& context, long min_value, long fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number_integer())
    throw Error(origin + ": " + context + "." + field + " must be an integer");
  long v = j[field].get<long>();
  if (v < min_value)
    throw Error(origin + ": " + context + "." + field + " must be at least " +
                std::to_string(min_value));
  return v;
}

std::string config_string(const json& j, const char* field,
                          const std::string& origin,
                          const std::string& context) {
  if (!j.contains(field) || !j[field].is_string())
    throw Error(origin + ": " + context + " needs a string \"" + field + "\"");
  return j[field].get<std::string>();
}

}  // namespace

HarnessConfig parse_config(const std::string& content,
                           const std::string& origin) {
  json j = json::parse(content, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(origin + ": config is not a JSON object");

  HarnessConfig config;
  if (j.contains("backends")) {
    if (!j["backends"].is_object())
      throw Error(origin + ": \"backends\" must be an object");
    for (const auto& [name, bj] : j["backends"].items()) {
      const std::string context = "backends." + name;
      BackendConfig b;
      b.endpoint_url = config_string(bj, "endpoint_url", origin, context);
      b.model_name = config_string(bj, "model_name", origin, context);
      if (bj.contains("api_key_env"))
        b.api_key_env = config_string(bj, "api_key_env", origin, context);
      b.timeout = std::chrono::milliseconds(
          config_int(bj, "timeout_ms", origin, context, 1,
                     b.timeout.count()));
      b.max_retries = static_cast<int>(
          config_int(bj, "max_retries", origin, context, 0, b.max_retries));
      if (bj.contains("retry_backoff_ms")) {
        if (!bj["retry_backoff_ms"].is_array())
          throw Error(origin + ": " + context +
                      ".retry_backoff_ms must be an array");
        b.retry_backoff.clear();
        for (const json& v : bj["retry_backoff_ms"]) {
          if (!v.is_number_integer() || v.get<long>() < 0)
            throw Error(origin + ": " + context +
                        ".retry_backoff_ms entries must be non-negative "
                        "integers");
          b.retry_backoff.emplace_back(v.get<long>());
        }
      }
      b.max_inflight = static_cast<int>(
          config_int(bj, "max_inflight", origin, context, 1, b.max_inflight));
      config.backends.emplace(name, std::move(b));
    }
  }
  config.default_backend = j.value("default_backend", std::string());
  if (!config.default_backend.empty() &&
      !config.backends.count(config.default_backend))
    throw Error(origin + ": default_backend \"" + config.default_backend +
                "\" is not a configured backend");

  if (j.contains("debate")) {
    const json& dj = j["debate"];
    config.debate.max_rounds = static_cast<int>(config_int(
        dj, "max_rounds", origin, "debate", 1, config.debate.max_rounds));
    config.debate.exemplar_limit = static_cast<int>(
        config_int(dj, "exemplar_limit", origin, "debate", 0,
                   config.debate.exemplar_limit));
    if (dj.contains("knowledge")) {
      if (!dj["knowledge"].is_string())
        throw Error(origin + ": debate.knowledge must be a string");
      config.debate.knowledge = dj["knowledge"].get<std::string>();
    }
  }
  return config;
}

HarnessConfig load_config(const std::string& path) {
  return parse_config(read_file(path), path);
}

}  // namespace wneval
