#ifndef WNEVAL_AGREEMENT_HPP
#define WNEVAL_AGREEMENT_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wneval/decision.hpp"

namespace wneval {

/// Fully populated subjects-by-raters score grid. Subjects are
/// (item_id, system) pairs; values row i column j is rater j's score
/// for subject i.
struct RatingMatrix {
  std::vector<std::pair<std::string, std::string>> subjects;
  std::vector<std::string> raters;
  Eigen::MatrixXd values;

  /// Throws when the grid shape does not match the key lists.
  void check_shape() const;
};

/// Inter-rater agreement summary; fields left empty when the
/// corresponding statistic was not computed for this comparison.
struct AgreementReport {
  std::optional<double> simple_agreement;
  std::optional<double> cohen_kappa;
  std::optional<double> linear_weighted_kappa;
  std::optional<double> quadratic_weighted_kappa;
  std::optional<double> icc_3_1;
  std::optional<double> agreement_rate;
};

/// Rank correlation against human scores; spearman is empty when a
/// sequence has no rank variance. variance_explained_pct is always
/// 100 * spearman^2.
struct CorrelationReport {
  std::optional<double> spearman;
  std::optional<double> variance_explained_pct;
  int n = 0;
};

struct IccResult {
  double value = 0.0;
  bool degenerate = false;
};

enum class KappaWeights { Linear, Quadratic };

/// Fraction of positions with identical labels.
double simple_agreement(const Eigen::Ref<const Eigen::VectorXi>& a,
                        const Eigen::Ref<const Eigen::VectorXi>& b);

/// Cohen's kappa (p_o - p_e)/(1 - p_e) over labels in [0, num_classes).
/// Perfect observed agreement returns exactly 1.0, which also covers
/// the degenerate p_e = 1 case.
double cohen_kappa(const Eigen::Ref<const Eigen::VectorXi>& a,
                   const Eigen::Ref<const Eigen::VectorXi>& b,
                   int num_classes);

/// Weighted kappa 1 - (sum w*o)/(sum w*e) with disagreement weights
/// |i-j|/(C-1) (linear) or ((i-j)/(C-1))^2 (quadratic). A zero expected
/// disagreement returns 1.0 when the observed disagreement is also zero
/// and is an error otherwise.
double weighted_kappa(const Eigen::Ref<const Eigen::VectorXi>& a,
                      const Eigen::Ref<const Eigen::VectorXi>& b,
                      int num_classes, KappaWeights scheme);

/// ICC(3,1): two-way mixed, consistency, single rater. Rows are
/// subjects, columns raters. An all-identical grid, and more generally
/// a zero denominator (no subject variance with perfectly additive
/// raters), is reported as 0 with the degenerate flag set.
IccResult icc_3_1(const Eigen::Ref<const Eigen::MatrixXd>& ratings);

/// Ranks with ties assigned the mean of their rank span (1-based).
Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Spearman rank correlation; empty when either sequence is constant.
std::optional<double> spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y);

/// Spearman of metric scores against human scores plus the share of
/// human-score variance it explains (100 * rho^2).
CorrelationReport correlate_with_humans(
    const Eigen::Ref<const Eigen::VectorXd>& metric_scores,
    const Eigen::Ref<const Eigen::VectorXd>& human_scores);

/// Fraction of aligned positions where all three sub-scores match.
double agreement_rate(const std::vector<DecisionVector>& a,
                      const std::vector<DecisionVector>& b);

}  // namespace wneval

#endif  // WNEVAL_AGREEMENT_HPP
