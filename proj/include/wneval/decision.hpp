#ifndef WNEVAL_DECISION_HPP
#define WNEVAL_DECISION_HPP

#include <string>

namespace wneval {

/// One evaluation outcome: three 0/1/2 sub-scores plus the free-text
/// reasoning that produced them.
struct DecisionVector {
  int specific = 0;
  int general1 = 0;
  int general2 = 0;
  std::string rationale;

  bool scores_equal(const DecisionVector& other) const {
    return specific == other.specific && general1 == other.general1 &&
           general2 == other.general2;
  }

  int total() const { return specific + general1 + general2; }
};

inline bool valid_score(int score) { return score >= 0 && score <= 2; }

/// Canonical wire form: "Specific Metric: s. General Metric1: g1. General
/// Metric2: g2." with the rationale, when present, on the following line.
std::string render_decision(const DecisionVector& decision);

}  // namespace wneval

#endif  // WNEVAL_DECISION_HPP
