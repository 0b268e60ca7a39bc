#ifndef WNEVAL_METRICS_HPP
#define WNEVAL_METRICS_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wneval {

/// A single metric result in [0, 1] with its component statistics
/// ("p1".."pn", "brevity_penalty", "lcs", degeneracy flags, ...).
struct MetricScore {
  double value = 0.0;
  std::string metric_name;
  std::map<std::string, double> details;
};

enum class BleuSmoothing {
  None,
  // Sentence-level smoothing: the k-th zero-count precision is replaced
  // by 1 / (2^k * total n-gram count at that order).
  ExpDecay,
};

/// Whitespace tokenization over UTF-8 text; ASCII letters are lowercased
/// when `lowercase` is set. Input is expected to be NFC-normalized.
std::vector<std::string> tokenize(std::string_view text, bool lowercase = true);

/// Geometric mean of clipped n-gram precisions times the brevity penalty
/// min(1, exp(1 - r/c)), r = closest reference length, c = hypothesis
/// length. Orders the hypothesis is too short for are dropped from the
/// mean; an empty hypothesis scores 0 with details["degenerate"] = 1.
MetricScore bleu(const std::vector<std::string>& hypothesis,
                 const std::vector<std::vector<std::string>>& references,
                 int max_n = 4, BleuSmoothing smoothing = BleuSmoothing::ExpDecay);

/// Character n-gram F_beta: precision and recall are averaged over
/// n = 1..max_n, then combined. Whitespace is stripped before n-gram
/// extraction; characters are Unicode code points. Two empty strings
/// score 1.0 with details["degenerate"] = 1.
MetricScore chrf(std::string_view hypothesis, std::string_view reference,
                 int max_n = 6, double beta = 2.0);

/// F1 over the longest common subsequence: P = L/|hyp|, R = L/|ref|.
MetricScore rouge_l(const std::vector<std::string>& hypothesis,
                    const std::vector<std::string>& reference);

}  // namespace wneval

#endif  // WNEVAL_METRICS_HPP
