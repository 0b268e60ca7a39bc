#ifndef WNEVAL_BACKEND_HPP
#define WNEVAL_BACKEND_HPP

#include <chrono>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wneval/decision.hpp"
#include "wneval/rubric.hpp"

namespace wneval {

struct CompletionRequest {
  std::string system_text;
  std::string user_text;
  double temperature = 0.0;
  int max_output_tokens = 2048;
  std::string model_name;
};

struct BackendConfig {
  std::string endpoint_url;
  std::string model_name;
  // Name of the environment variable holding the bearer token; the key
  // itself is never stored or logged.
  std::string api_key_env;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 2;
  std::vector<std::chrono::milliseconds> retry_backoff{
      std::chrono::milliseconds{500}, std::chrono::milliseconds{2000}};
  int max_inflight = 4;
};

/// FNV-1a hash over the request fields, hex-encoded. Transcripts refer
/// to requests by this digest; it contains no credential material.
std::string request_digest(const CompletionRequest& req);

class Backend {
 public:
  virtual ~Backend() = default;

  /// Returns the raw model reply for one request.
  virtual std::string complete(const CompletionRequest& req) = 0;

  virtual std::string name() const = 0;
};

/// Replays a fixed list of replies in order; thread-safe, deterministic
/// as long as requests arrive in a fixed order. An exhausted queue is
/// an error.
class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(std::vector<std::string> replies,
                           std::string name = "scripted");

  std::string complete(const CompletionRequest& req) override;
  std::string name() const override { return name_; }

  std::size_t remaining() const;

 private:
  mutable std::mutex mutex_;
  std::deque<std::string> queue_;
  std::string name_;
};

/// Reads one reply per line. Lines beginning with a double quote are
/// decoded as JSON strings (so replies may contain \n escapes); other
/// lines are taken verbatim. Blank lines are skipped.
std::vector<std::string> load_reply_lines(const std::string& path);

/// Chat-completion HTTP client: posts {model, messages, temperature,
/// max_tokens} and returns choices[0].message.content. Transient
/// transport failures are retried per the config schedule;
/// authentication failures never are. At most max_inflight requests run
/// concurrently.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(BackendConfig config);
  ~HttpBackend() override;

  std::string complete(const CompletionRequest& req) override;
  std::string name() const override;

 private:
  std::string complete_once(const CompletionRequest& req,
                            const std::string& api_key);

  struct Gate;
  BackendConfig config_;
  std::string scheme_host_;
  std::string path_;
  std::unique_ptr<Gate> gate_;
};

/// Judge reply: consensus verdict, the judge's stated reason, and the
/// judge's own decision vector when one is present (expected on the
/// final no-consensus round). The reason text doubles as the final
/// vector's rationale.
struct JudgeVerdict {
  bool consensus = false;
  std::string reason;
  std::optional<DecisionVector> final_decision;
};

/// Extracts the three labeled sub-scores and treats the remaining text
/// as the rationale. Label matching is tolerant: "Specific Metric" or
/// "specific", any case, ":" or "=" separators. Scores outside {0,1,2}
/// or fewer than three labels raise ParseError carrying the raw text.
DecisionVector parse_decision(const std::string& text, const RuleSet& rules);

/// Detects "Judge: yes"/"Judge: no" (tolerant spacing and case), the
/// text after a "Reason:" label (or the whole remainder), and an
/// optional embedded decision vector.
JudgeVerdict parse_judge(const std::string& text);

/// Canonical form: "Specific Metric: s. General Metric1: g1. General
/// Metric2: g2." with the rationale on a following line when present.
/// parse_decision inverts this exactly.
std::string render_decision(const DecisionVector& decision);

}  // namespace wneval

#endif  // WNEVAL_BACKEND_HPP
