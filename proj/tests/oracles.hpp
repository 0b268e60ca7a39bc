// Independent direct-formula implementations used to cross-check the
// library. Everything here is written with plain loops and explicit
// sums, on purpose: no Eigen, no shared helpers with src/.
#ifndef WNEVAL_TEST_ORACLES_HPP
#define WNEVAL_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace oracles {

inline double simple_agreement(const std::vector<int>& a,
                               const std::vector<int>& b) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == b[i]) ++same;
  return static_cast<double>(same) / static_cast<double>(a.size());
}

inline double cohen_kappa(const std::vector<int>& a, const std::vector<int>& b,
                          int classes) {
  const double n = static_cast<double>(a.size());
  std::vector<double> count_a(classes, 0.0), count_b(classes, 0.0);
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    count_a[a[i]] += 1.0;
    count_b[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  const double p_o = agree / n;
  if (p_o >= 1.0) return 1.0;
  double p_e = 0.0;
  for (int c = 0; c < classes; ++c) p_e += (count_a[c] / n) * (count_b[c] / n);
  return (p_o - p_e) / (1.0 - p_e);
}

inline double weighted_kappa(const std::vector<int>& a,
                             const std::vector<int>& b, int classes,
                             bool quadratic) {
  const double n = static_cast<double>(a.size());
  const double span = classes - 1;
  std::vector<std::vector<double>> joint(classes,
                                         std::vector<double>(classes, 0.0));
  std::vector<double> pa(classes, 0.0), pb(classes, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[a[i]][b[i]] += 1.0 / n;
    pa[a[i]] += 1.0 / n;
    pb[b[i]] += 1.0 / n;
  }
  double wo = 0.0, we = 0.0;
  for (int i = 0; i < classes; ++i) {
    for (int j = 0; j < classes; ++j) {
      double d = (i - j) / span;
      double w = quadratic ? d * d : std::fabs(d);
      wo += w * joint[i][j];
      we += w * pa[i] * pb[j];
    }
  }
  if (we == 0.0) return 1.0;  // reachable only with wo == 0 for valid input
  return 1.0 - wo / we;
}

// Two-way ANOVA, consistency, single rater. Returns nullopt for the
// degenerate zero-denominator case.
inline std::optional<double> icc_3_1(
    const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size(), k = m[0].size();
  double grand = 0.0;
  for (const auto& row : m)
    for (double v : row) grand += v;
  grand /= static_cast<double>(n * k);

  double ss_rows = 0.0, ss_cols = 0.0, ss_total = 0.0;
  for (const auto& row : m) {
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(k);
    ss_rows += static_cast<double>(k) * (mean - grand) * (mean - grand);
  }
  for (std::size_t j = 0; j < k; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += m[i][j];
    mean /= static_cast<double>(n);
    ss_cols += static_cast<double>(n) * (mean - grand) * (mean - grand);
  }
  for (const auto& row : m)
    for (double v : row) ss_total += (v - grand) * (v - grand);

  const double ss_err = std::max(0.0, ss_total - ss_rows - ss_cols);
  const double ms_rows = ss_rows / static_cast<double>(n - 1);
  const double ms_err = ss_err / static_cast<double>((n - 1) * (k - 1));
  const double denom = ms_rows + static_cast<double>(k - 1) * ms_err;
  if (denom == 0.0) return std::nullopt;
  return (ms_rows - ms_err) / denom;
}

inline std::vector<double> ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
  std::vector<double> r(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    for (std::size_t p = i; p <= j; ++p)
      r[order[p]] = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 +
                    1.0;
    i = j + 1;
  }
  return r;
}

inline std::optional<double> spearman(const std::vector<double>& x,
                                      const std::vector<double>& y) {
  std::vector<double> rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (double v : rx) mx += v;
  for (double v : ry) my += v;
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

// Occurrences of the n-gram starting at `pos` in `hyp` anywhere in
// `seq`, by direct scanning.
inline int count_ngram(const std::vector<std::string>& seq,
                       const std::vector<std::string>& hyp, std::size_t pos,
                       int n) {
  int count = 0;
  if (seq.size() < static_cast<std::size_t>(n)) return 0;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    bool same = true;
    for (int j = 0; j < n; ++j)
      if (seq[i + j] != hyp[pos + j]) {
        same = false;
        break;
      }
    if (same) ++count;
  }
  return count;
}

// Clipped modified n-gram precision with a single reference, numerator
// and denominator accumulated position-by-position: each hypothesis
// position contributes min(hyp_count, ref_count)/hyp_count of a match,
// which sums to the clipped count without building a gram table.
inline double clipped_precision(const std::vector<std::string>& hyp,
                                const std::vector<std::string>& ref, int n) {
  if (hyp.size() < static_cast<std::size_t>(n)) return -1.0;  // undefined
  double matched = 0.0;
  int total = 0;
  for (std::size_t pos = 0; pos + n <= hyp.size(); ++pos) {
    ++total;
    const int in_hyp = count_ngram(hyp, hyp, pos, n);
    const int in_ref = count_ngram(ref, hyp, pos, n);
    matched += static_cast<double>(std::min(in_hyp, in_ref)) /
               static_cast<double>(in_hyp);
  }
  return matched / static_cast<double>(total);
}

inline double brevity_penalty(std::size_t hyp_len, std::size_t ref_len) {
  if (hyp_len >= ref_len) return 1.0;
  return std::exp(1.0 - static_cast<double>(ref_len) /
                            static_cast<double>(hyp_len));
}

inline int lcs_length(const std::vector<std::string>& a,
                      const std::vector<std::string>& b) {
  std::vector<std::vector<int>> dp(a.size() + 1,
                                   std::vector<int>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      dp[i][j] = a[i - 1] == b[j - 1]
                     ? dp[i - 1][j - 1] + 1
                     : std::max(dp[i - 1][j], dp[i][j - 1]);
  return dp[a.size()][b.size()];
}

}  // namespace oracles

#endif  // WNEVAL_TEST_ORACLES_HPP
