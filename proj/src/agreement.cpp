#include "wneval/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wneval/error.hpp"

namespace wneval {

namespace {

void check_pair(const Eigen::Ref<const Eigen::VectorXi>& a,
                const Eigen::Ref<const Eigen::VectorXi>& b, const char* who) {
  if (a.size() != b.size())
    throw Error(std::string(who) + ": length mismatch (" +
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                ")");
  if (a.size() == 0) throw Error(std::string(who) + ": empty input");
}

void check_labels(const Eigen::Ref<const Eigen::VectorXi>& v, int num_classes,
                  const char* who) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] < 0 || v[i] >= num_classes)
      throw Error(std::string(who) + ": label " + std::to_string(v[i]) +
                  " outside [0, " + std::to_string(num_classes) + ")");
}

// Observed joint proportions and the two marginal vectors.
struct Contingency {
  Eigen::MatrixXd observed;
  Eigen::VectorXd marginal_a;
  Eigen::VectorXd marginal_b;
};

Contingency contingency(const Eigen::Ref<const Eigen::VectorXi>& a,
                        const Eigen::Ref<const Eigen::VectorXi>& b,
                        int num_classes) {
  Contingency t;
  t.observed = Eigen::MatrixXd::Zero(num_classes, num_classes);
  const double weight = 1.0 / static_cast<double>(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) t.observed(a[i], b[i]) += weight;
  t.marginal_a = t.observed.rowwise().sum();
  t.marginal_b = t.observed.colwise().sum();
  return t;
}

Eigen::MatrixXd disagreement_weights(int num_classes, KappaWeights scheme) {
  const double span = num_classes - 1;
  return Eigen::MatrixXd::NullaryExpr(
      num_classes, num_classes, [&](Eigen::Index i, Eigen::Index j) {
        double d = static_cast<double>(i - j) / span;
        return scheme == KappaWeights::Linear ? std::abs(d) : d * d;
      });
}

}  // namespace

void RatingMatrix::check_shape() const {
  if (values.rows() != static_cast<Eigen::Index>(subjects.size()) ||
      values.cols() != static_cast<Eigen::Index>(raters.size()))
    throw Error("rating matrix: grid is " + std::to_string(values.rows()) +
                "x" + std::to_string(values.cols()) + " but keys are " +
                std::to_string(subjects.size()) + " subjects x " +
                std::to_string(raters.size()) + " raters");
}

double simple_agreement(const Eigen::Ref<const Eigen::VectorXi>& a,
                        const Eigen::Ref<const Eigen::VectorXi>& b) {
  check_pair(a, b, "simple_agreement");
  return static_cast<double>((a.array() == b.array()).count()) /
         static_cast<double>(a.size());
}

double cohen_kappa(const Eigen::Ref<const Eigen::VectorXi>& a,
                   const Eigen::Ref<const Eigen::VectorXi>& b,
                   int num_classes) {
  check_pair(a, b, "cohen_kappa");
  if (num_classes < 2) throw Error("cohen_kappa: need at least 2 classes");
  check_labels(a, num_classes, "cohen_kappa");
  check_labels(b, num_classes, "cohen_kappa");

  auto t = contingency(a, b, num_classes);
  const double p_o = t.observed.diagonal().sum();
  // p_e = 1 forces p_o = 1, so perfect observed agreement is the only
  // path to a zero denominator.
  if (p_o >= 1.0) return 1.0;
  const double p_e = t.marginal_a.dot(t.marginal_b);
  return (p_o - p_e) / (1.0 - p_e);
}

double weighted_kappa(const Eigen::Ref<const Eigen::VectorXi>& a,
                      const Eigen::Ref<const Eigen::VectorXi>& b,
                      int num_classes, KappaWeights scheme) {
  check_pair(a, b, "weighted_kappa");
  if (num_classes < 2) throw Error("weighted_kappa: need at least 2 classes");
  check_labels(a, num_classes, "weighted_kappa");
  check_labels(b, num_classes, "weighted_kappa");

  auto t = contingency(a, b, num_classes);
  Eigen::MatrixXd w = disagreement_weights(num_classes, scheme);
  Eigen::MatrixXd expected = t.marginal_a * t.marginal_b.transpose();
  const double weighted_observed = w.cwiseProduct(t.observed).sum();
  const double weighted_expected = w.cwiseProduct(expected).sum();
  if (weighted_expected == 0.0) {
    if (weighted_observed == 0.0) return 1.0;
    throw Error(
        "weighted_kappa: zero expected disagreement with nonzero observed "
        "disagreement");
  }
  return 1.0 - weighted_observed / weighted_expected;
}

IccResult icc_3_1(const Eigen::Ref<const Eigen::MatrixXd>& ratings) {
  const Eigen::Index n = ratings.rows(), k = ratings.cols();
  if (n < 2 || k < 2)
    throw Error("icc_3_1: need at least 2 subjects and 2 raters, got " +
                std::to_string(n) + "x" + std::to_string(k));

  if (ratings.maxCoeff() == ratings.minCoeff()) return {0.0, true};

  const double grand = ratings.mean();
  Eigen::VectorXd row_means = ratings.rowwise().mean();
  Eigen::VectorXd col_means = ratings.colwise().mean();

  const double ss_rows =
      static_cast<double>(k) * (row_means.array() - grand).square().sum();
  const double ss_cols =
      static_cast<double>(n) * (col_means.array() - grand).square().sum();
  const double ss_total = (ratings.array() - grand).square().sum();
  const double ss_error = std::max(0.0, ss_total - ss_rows - ss_cols);

  const double ms_rows = ss_rows / static_cast<double>(n - 1);
  const double ms_error = ss_error / static_cast<double>((n - 1) * (k - 1));

  const double denom = ms_rows + static_cast<double>(k - 1) * ms_error;
  if (denom == 0.0) return {0.0, true};
  return {(ms_rows - ms_error) / denom, false};
}

Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index n = x.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return x[i] < x[j]; });

  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double mean_rank = static_cast<double>(i + j) / 2.0 + 1.0;
    for (Eigen::Index p = i; p <= j; ++p) ranks[order[p]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size())
    throw Error("spearman: length mismatch (" + std::to_string(x.size()) +
                " vs " + std::to_string(y.size()) + ")");
  if (x.size() < 2) throw Error("spearman: need at least 2 observations");

  Eigen::VectorXd rx = average_ranks(x);
  Eigen::VectorXd ry = average_ranks(y);
  Eigen::ArrayXd cx = rx.array() - rx.mean();
  Eigen::ArrayXd cy = ry.array() - ry.mean();
  const double vx = (cx * cx).sum();
  const double vy = (cy * cy).sum();
  if (vx == 0.0 || vy == 0.0) return std::nullopt;
  return (cx * cy).sum() / std::sqrt(vx * vy);
}

CorrelationReport correlate_with_humans(
    const Eigen::Ref<const Eigen::VectorXd>& metric_scores,
    const Eigen::Ref<const Eigen::VectorXd>& human_scores) {
  CorrelationReport report;
  report.n = static_cast<int>(metric_scores.size());
  report.spearman = spearman(metric_scores, human_scores);
  if (report.spearman)
    report.variance_explained_pct = 100.0 * *report.spearman * *report.spearman;
  return report;
}

double agreement_rate(const std::vector<DecisionVector>& a,
                      const std::vector<DecisionVector>& b) {
  if (a.size() != b.size())
    throw Error("agreement_rate: length mismatch (" + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()) + ")");
  if (a.empty()) throw Error("agreement_rate: empty input");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].scores_equal(b[i])) ++matches;
  return static_cast<double>(matches) / static_cast<double>(a.size());
}

}  // namespace wneval
