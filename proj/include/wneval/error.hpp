#ifndef WNEVAL_ERROR_HPP
#define WNEVAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wneval {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when agent or judge output cannot be turned into a decision.
/// Keeps the raw model text so the caller can re-prompt or log it.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string raw_text)
      : Error(message), raw_text_(std::move(raw_text)) {}

  const std::string& raw_text() const { return raw_text_; }

 private:
  std::string raw_text_;
};

class BackendError : public Error {
 public:
  enum class Kind {
    Auth,            // missing/rejected credentials; never retried
    Transport,       // timeout or connection failure after retries
    QueueExhausted,  // scripted backend ran out of replies
    Protocol,        // response body not in the expected shape
  };

  BackendError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace wneval

#endif  // WNEVAL_ERROR_HPP
