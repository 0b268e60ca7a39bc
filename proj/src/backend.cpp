#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "wneval/backend.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "wneval/error.hpp"

namespace wneval {

namespace {

using nlohmann::json;

void fnv1a_mix(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  // Field separator so adjacent fields cannot alias.
  h ^= 0x1f;
  h *= 0x100000001b3ull;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct LabeledScore {
  int value = 0;
  std::size_t begin = 0;
  std::size_t length = 0;
  bool found = false;
};

// First match of `label_pattern` followed by ":" or "=" and an integer.
// The span includes one trailing period so that removing it from the
// canonical rendering leaves only whitespace.
LabeledScore find_score(const std::string& text, const char* label_pattern) {
  std::regex re(std::string(label_pattern) + R"(\s*[:=]\s*(-?\d+)\s*\.?)",
                std::regex::icase);
  std::smatch m;
  if (!std::regex_search(text, m, re)) return {};
  LabeledScore s;
  s.value = std::stoi(m[1].str());
  s.begin = static_cast<std::size_t>(m.position(0));
  s.length = static_cast<std::size_t>(m.length(0));
  s.found = true;
  return s;
}

std::string remove_spans(std::string text, std::vector<LabeledScore> spans) {
  std::sort(spans.begin(), spans.end(),
            [](const LabeledScore& a, const LabeledScore& b) {
              return a.begin > b.begin;
            });
  for (const auto& s : spans) text.erase(s.begin, s.length);
  return text;
}

// Shared by parse_decision and parse_judge; range errors are reported
// by the callers with their own context.
std::optional<DecisionVector> extract_decision(const std::string& text,
                                               std::string* leftover) {
  auto specific = find_score(text, R"(specific(?:\s*metric)?)");
  auto general1 = find_score(text, R"(general\s*(?:metric\s*)?1)");
  auto general2 = find_score(text, R"(general\s*(?:metric\s*)?2)");
  if (!specific.found || !general1.found || !general2.found) return std::nullopt;

  DecisionVector v;
  v.specific = specific.value;
  v.general1 = general1.value;
  v.general2 = general2.value;
  v.rationale = trim(remove_spans(text, {specific, general1, general2}));
  if (leftover) *leftover = v.rationale;
  return v;
}

}  // namespace

std::string request_digest(const CompletionRequest& req) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  fnv1a_mix(h, req.system_text);
  fnv1a_mix(h, req.user_text);
  fnv1a_mix(h, std::to_string(req.temperature));
  fnv1a_mix(h, std::to_string(req.max_output_tokens));
  fnv1a_mix(h, req.model_name);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> replies,
                                 std::string name)
    : queue_(replies.begin(), replies.end()), name_(std::move(name)) {}

std::string ScriptedBackend::complete(const CompletionRequest& req) {
  if (req.user_text.empty())
    throw BackendError(BackendError::Kind::Protocol,
                       name_ + ": empty user text");
  std::lock_guard<std::mutex> lock(mutex_);
  if (queue_.empty())
    throw BackendError(BackendError::Kind::QueueExhausted,
                       name_ + ": scripted reply queue exhausted");
  std::string reply = std::move(queue_.front());
  queue_.pop_front();
  return reply;
}

std::size_t ScriptedBackend::remaining() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return queue_.size();
}

std::vector<std::string> load_reply_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open reply file: " + path);
  std::vector<std::string> replies;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line.front() == '"') {
      json parsed = json::parse(line, nullptr, false);
      if (parsed.is_discarded() || !parsed.is_string())
        throw Error(path + ":" + std::to_string(line_no) +
                    ": malformed JSON string reply");
      replies.push_back(parsed.get<std::string>());
    } else {
      replies.push_back(line);
    }
  }
  return replies;
}

// Counting gate bounding concurrent live requests.
struct HttpBackend::Gate {
  explicit Gate(int limit) : available(limit) {}

  void acquire() {
    std::unique_lock<std::mutex> lock(mutex);
    cv.wait(lock, [&] { return available > 0; });
    --available;
  }
  void release() {
    {
      std::lock_guard<std::mutex> lock(mutex);
      ++available;
    }
    cv.notify_one();
  }

  std::mutex mutex;
  std::condition_variable cv;
  int available;
};

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) {
  if (config_.max_retries < 0)
    throw Error("backend config: max_retries must be non-negative");
  if (config_.timeout.count() <= 0)
    throw Error("backend config: timeout must be positive");
  if (config_.max_inflight < 1)
    throw Error("backend config: max_inflight must be at least 1");

  // Split "scheme://host[:port]/path" for the HTTP client.
  const std::string& url = config_.endpoint_url;
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error("backend config: endpoint URL missing scheme: " + url);
  std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    scheme_host_ = url;
    path_ = "/";
  } else {
    scheme_host_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
  gate_ = std::make_unique<Gate>(config_.max_inflight);
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::name() const {
  return "http:" + config_.model_name;
}

std::string HttpBackend::complete(const CompletionRequest& req) {
  if (req.user_text.empty())
    throw BackendError(BackendError::Kind::Protocol, "empty user text");
  if (config_.api_key_env.empty())
    throw BackendError(BackendError::Kind::Auth,
                       "backend config names no API key variable");
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0')
    throw BackendError(BackendError::Kind::Auth,
                       "environment variable " + config_.api_key_env +
                           " is not set");

  for (int attempt = 0;; ++attempt) {
    try {
      return complete_once(req, key);
    } catch (const BackendError& e) {
      if (e.kind() != BackendError::Kind::Transport ||
          attempt >= config_.max_retries)
        throw;
      if (!config_.retry_backoff.empty()) {
        std::size_t i = std::min<std::size_t>(
            attempt, config_.retry_backoff.size() - 1);
        std::this_thread::sleep_for(config_.retry_backoff[i]);
      }
    }
  }
}

std::string HttpBackend::complete_once(const CompletionRequest& req,
                                       const std::string& api_key) {
  json body;
  body["model"] = req.model_name.empty() ? config_.model_name : req.model_name;
  json messages = json::array();
  if (!req.system_text.empty())
    messages.push_back({{"role", "system"}, {"content", req.system_text}});
  messages.push_back({{"role", "user"}, {"content", req.user_text}});
  body["messages"] = std::move(messages);
  body["temperature"] = req.temperature;
  body["max_tokens"] = req.max_output_tokens;

  gate_->acquire();
  struct Release {
    Gate* g;
    ~Release() { g->release(); }
  } release{gate_.get()};

  httplib::Client client(scheme_host_);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(
      config_.timeout));
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers{{"Authorization", "Bearer " + api_key}};

  auto result =
      client.Post(path_, headers, body.dump(), "application/json");
  if (!result)
    throw BackendError(BackendError::Kind::Transport,
                       "request failed: " + httplib::to_string(result.error()));
  if (result->status == 401 || result->status == 403)
    throw BackendError(BackendError::Kind::Auth,
                       "authentication rejected (HTTP " +
                           std::to_string(result->status) + ")");
  if (result->status == 429 || result->status >= 500)
    throw BackendError(BackendError::Kind::Transport,
                       "HTTP " + std::to_string(result->status));
  if (result->status < 200 || result->status >= 300)
    throw BackendError(BackendError::Kind::Protocol,
                       "HTTP " + std::to_string(result->status) + ": " +
                           result->body.substr(0, 200));

  json reply = json::parse(result->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") ||
      !reply["choices"].is_array() || reply["choices"].empty())
    throw BackendError(BackendError::Kind::Protocol,
                       "malformed completion response");
  const json& first = reply["choices"][0];
  if (!first.contains("message") || !first["message"].contains("content") ||
      !first["message"]["content"].is_string())
    throw BackendError(BackendError::Kind::Protocol,
                       "completion response has no message content");
  return first["message"]["content"].get<std::string>();
}

DecisionVector parse_decision(const std::string& text, const RuleSet& rules) {
  auto decision = extract_decision(text, nullptr);
  if (!decision)
    throw ParseError("reply does not contain the three labeled scores", text);
  auto violations = validate_decision(*decision, rules);
  if (!violations.empty()) {
    std::string what = "reply scores invalid: " + violations[0];
    for (std::size_t i = 1; i < violations.size(); ++i)
      what += "; " + violations[i];
    throw ParseError(what, text);
  }
  return *decision;
}

JudgeVerdict parse_judge(const std::string& text) {
  std::regex verdict_re(R"(judge\s*[:=]\s*(yes|no)\s*\.?)", std::regex::icase);
  std::smatch m;
  if (!std::regex_search(text, m, verdict_re))
    throw ParseError("reply contains no judge verdict", text);

  JudgeVerdict verdict;
  std::string answer = m[1].str();
  for (char& c : answer)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  verdict.consensus = answer == "yes";

  std::string rest = text;
  rest.erase(static_cast<std::size_t>(m.position(0)),
             static_cast<std::size_t>(m.length(0)));

  std::string leftover;
  if (auto decision = extract_decision(rest, &leftover)) {
    if (valid_score(decision->specific) && valid_score(decision->general1) &&
        valid_score(decision->general2)) {
      verdict.final_decision = decision;
      rest = leftover;
    }
  }

  std::regex reason_re(R"(reason\s*[:=]\s*)", std::regex::icase);
  if (std::regex_search(rest, m, reason_re))
    verdict.reason = trim(rest.substr(
        static_cast<std::size_t>(m.position(0) + m.length(0))));
  else
    verdict.reason = trim(rest);
  if (verdict.final_decision) verdict.final_decision->rationale = verdict.reason;
  return verdict;
}

std::string render_decision(const DecisionVector& decision) {
  std::string out = "Specific Metric: " + std::to_string(decision.specific) +
                    ". General Metric1: " + std::to_string(decision.general1) +
                    ". General Metric2: " + std::to_string(decision.general2) +
                    ".";
  if (!decision.rationale.empty()) out += "\n" + decision.rationale;
  return out;
}

}  // namespace wneval
