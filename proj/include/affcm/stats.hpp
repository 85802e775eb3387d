#ifndef AFFCM_STATS_HPP
#define AFFCM_STATS_HPP

#include "affcm/core.hpp"

namespace affcm {

struct FriedmanResult {
    Eigen::MatrixXd ranks;       ///< N x K, 1 = best, ties share the average rank
    Eigen::VectorXd mean_ranks;  ///< K
    double statistic = 0;        ///< chi-square form, K - 1 degrees of freedom
    double p_value = 1;
    double iman_davenport = 0;   ///< F form, (K - 1, (K - 1)(N - 1)) degrees of freedom
    double iman_davenport_p = 1;
    double alpha = 0.05;
    bool significant = false;    ///< statistic's p-value < alpha
};

/**
 * Friedman test over an N datasets x K algorithms score table.
 *
 *     chi2_F = 12 N / (K (K + 1)) [sum_j R_j^2 - K (K + 1)^2 / 4]
 *     F_F    = (N - 1) chi2_F / (N (K - 1) - chi2_F)
 */
FriedmanResult friedman_test(const Eigen::MatrixXd& scores, bool higher_is_better, double alpha = 0.05);

/// Average-rank ranking of one row (1 = best).
Eigen::VectorXd rank_row(const Eigen::VectorXd& row, bool higher_is_better);

/// Studentized range quantile over sqrt(2) for K in [2, 20], alpha in {0.05, 0.10}.
double nemenyi_q(int k, double alpha);

/// CD = q_alpha sqrt(K (K + 1) / (6 N)).
double nemenyi_cd(int k, int n, double alpha);

}  // namespace affcm

#endif
