#include "wneval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "wneval/error.hpp"

namespace wneval {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Counts token n-grams of one order; tokens are joined with an
// unlikely separator byte so the map key stays a plain string.
std::unordered_map<std::string, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int j = 0; j < n; ++j) {
      if (j > 0) key.push_back('\x1f');
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

// Decodes UTF-8 into code points, dropping ASCII whitespace. Bytes that
// do not form a valid sequence are kept as single code points so the
// metric stays total over arbitrary input.
std::vector<char32_t> codepoints_no_space(std::string_view text) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char b = static_cast<unsigned char>(text[i]);
    char32_t cp = b;
    std::size_t len = 1;
    if (b >= 0xf0) {
      len = 4;
      cp = b & 0x07;
    } else if (b >= 0xe0) {
      len = 3;
      cp = b & 0x0f;
    } else if (b >= 0xc0) {
      len = 2;
      cp = b & 0x1f;
    }
    if (i + len > text.size()) len = 1, cp = b;
    for (std::size_t j = 1; j < len; ++j) {
      unsigned char c = static_cast<unsigned char>(text[i + j]);
      if ((c & 0xc0) != 0x80) {
        len = 1;
        cp = b;
        break;
      }
      cp = (cp << 6) | (c & 0x3f);
    }
    i += len;
    if (cp < 0x80 && is_ascii_space(static_cast<char>(cp))) continue;
    out.push_back(cp);
  }
  return out;
}

std::unordered_map<std::u32string, int> char_ngram_counts(
    const std::vector<char32_t>& chars, int n) {
  std::unordered_map<std::u32string, int> counts;
  if (static_cast<int>(chars.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= chars.size(); ++i)
    ++counts[std::u32string(chars.begin() + i, chars.begin() + i + n)];
  return counts;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, bool lowercase) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_ascii_space(c)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    if (lowercase && c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    current.push_back(c);
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

MetricScore bleu(const std::vector<std::string>& hypothesis,
                 const std::vector<std::vector<std::string>>& references,
                 int max_n, BleuSmoothing smoothing) {
  if (max_n < 1) throw Error("bleu: max_n must be at least 1");
  if (references.empty()) throw Error("bleu: at least one reference required");

  MetricScore score;
  score.metric_name = "bleu";

  const int c = static_cast<int>(hypothesis.size());
  if (c == 0) {
    score.details["degenerate"] = 1.0;
    score.details["brevity_penalty"] = 0.0;
    score.details["hyp_len"] = 0.0;
    return score;
  }

  // Closest reference length; ties go to the shorter reference.
  int r = static_cast<int>(references[0].size());
  for (const auto& ref : references) {
    int len = static_cast<int>(ref.size());
    int d = std::abs(len - c), best = std::abs(r - c);
    if (d < best || (d == best && len < r)) r = len;
  }

  // Clipped modified precision per order; orders with no hypothesis
  // n-grams at all are left out of the geometric mean.
  std::vector<double> log_precisions;
  int zero_rank = 0;
  for (int n = 1; n <= max_n; ++n) {
    auto hyp_counts = ngram_counts(hypothesis, n);
    int total = 0, matched = 0;
    for (const auto& [gram, count] : hyp_counts) total += count;
    if (total == 0) {
      score.details["p" + std::to_string(n)] =
          std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    for (const auto& [gram, count] : hyp_counts) {
      int clip = 0;
      for (const auto& ref : references) {
        auto ref_counts = ngram_counts(ref, n);
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) clip = std::max(clip, it->second);
      }
      matched += std::min(count, clip);
    }
    double p = static_cast<double>(matched) / total;
    if (matched == 0) {
      ++zero_rank;
      if (smoothing == BleuSmoothing::ExpDecay)
        p = 1.0 / (std::exp2(zero_rank) * total);
    }
    score.details["p" + std::to_string(n)] = p;
    log_precisions.push_back(
        p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity());
  }

  double bp = std::min(1.0, std::exp(1.0 - static_cast<double>(r) / c));
  score.details["brevity_penalty"] = bp;
  score.details["hyp_len"] = c;
  score.details["ref_len"] = r;

  if (log_precisions.empty()) {
    score.details["degenerate"] = 1.0;
    return score;
  }
  double mean_log = 0.0;
  for (double lp : log_precisions) mean_log += lp;
  mean_log /= static_cast<double>(log_precisions.size());
  score.value = std::isinf(mean_log) ? 0.0 : bp * std::exp(mean_log);
  return score;
}

MetricScore chrf(std::string_view hypothesis, std::string_view reference,
                 int max_n, double beta) {
  if (max_n < 1) throw Error("chrf: max_n must be at least 1");
  if (beta <= 0.0) throw Error("chrf: beta must be positive");

  MetricScore score;
  score.metric_name = "chrf";

  auto hyp = codepoints_no_space(hypothesis);
  auto ref = codepoints_no_space(reference);
  if (hyp.empty() && ref.empty()) {
    score.value = 1.0;
    score.details["degenerate"] = 1.0;
    return score;
  }

  // Average precision and recall over the orders where at least one
  // side has n-grams; a one-sided empty order counts as zero.
  double sum_p = 0.0, sum_r = 0.0;
  int orders = 0;
  for (int n = 1; n <= max_n; ++n) {
    auto hyp_counts = char_ngram_counts(hyp, n);
    auto ref_counts = char_ngram_counts(ref, n);
    if (hyp_counts.empty() && ref_counts.empty()) continue;
    int hyp_total = 0, ref_total = 0, overlap = 0;
    for (const auto& [gram, count] : hyp_counts) hyp_total += count;
    for (const auto& [gram, count] : ref_counts) ref_total += count;
    for (const auto& [gram, count] : hyp_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) overlap += std::min(count, it->second);
    }
    sum_p += hyp_total > 0 ? static_cast<double>(overlap) / hyp_total : 0.0;
    sum_r += ref_total > 0 ? static_cast<double>(overlap) / ref_total : 0.0;
    ++orders;
  }

  double avg_p = sum_p / orders;
  double avg_r = sum_r / orders;
  score.details["precision"] = avg_p;
  score.details["recall"] = avg_r;
  double b2 = beta * beta;
  double denom = b2 * avg_p + avg_r;
  score.value = denom > 0.0 ? (1.0 + b2) * avg_p * avg_r / denom : 0.0;
  return score;
}

MetricScore rouge_l(const std::vector<std::string>& hypothesis,
                    const std::vector<std::string>& reference) {
  MetricScore score;
  score.metric_name = "rouge_l";

  const std::size_t h = hypothesis.size(), r = reference.size();
  if (h == 0 || r == 0) {
    score.details["degenerate"] = 1.0;
    score.details["lcs"] = 0.0;
    return score;
  }

  // Two-row LCS table over tokens.
  std::vector<int> prev(r + 1, 0), curr(r + 1, 0);
  for (std::size_t i = 1; i <= h; ++i) {
    for (std::size_t j = 1; j <= r; ++j) {
      if (hypothesis[i - 1] == reference[j - 1])
        curr[j] = prev[j - 1] + 1;
      else
        curr[j] = std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  const int lcs = prev[r];

  double precision = static_cast<double>(lcs) / h;
  double recall = static_cast<double>(lcs) / r;
  score.details["lcs"] = lcs;
  score.details["precision"] = precision;
  score.details["recall"] = recall;
  if (precision + recall > 0.0)
    score.value = 2.0 * precision * recall / (precision + recall);
  return score;
}

}  // namespace wneval
