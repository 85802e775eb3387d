#include "affcm/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

#include <array>
#include <numeric>

namespace affcm {

namespace {

// q_alpha(K) for K = 2..20: upper quantile of the studentized range with
// infinite degrees of freedom, divided by sqrt(2).
constexpr std::array<double, 19> kQ005 = {1.959964, 2.343701, 2.569032, 2.727774, 2.849705, 2.948320, 3.030878,
                                          3.101730, 3.163684, 3.218654, 3.268004, 3.312739, 3.353618, 3.391230,
                                          3.426041, 3.458425, 3.488685, 3.517073, 3.543799};
constexpr std::array<double, 19> kQ010 = {1.644854, 2.052293, 2.291341, 2.459516, 2.588521, 2.692732, 2.779884,
                                          2.854606, 2.919889, 2.977768, 3.029694, 3.076733, 3.119693, 3.159199,
                                          3.195743, 3.229723, 3.261461, 3.291224, 3.319233};

}  // namespace

Eigen::VectorXd rank_row(const Eigen::VectorXd& row, bool higher_is_better) {
    const Index k = row.size();
    std::vector<Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Index(0));
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return higher_is_better ? row(a) > row(b) : row(a) < row(b);
    });
    Eigen::VectorXd ranks(k);
    for (Index start = 0; start < k;) {
        Index end = start + 1;
        while (end < k && row(order[static_cast<std::size_t>(end)]) == row(order[static_cast<std::size_t>(start)])) {
            ++end;
        }
        const double avg = 0.5 * static_cast<double>(start + 1 + end);
        for (Index i = start; i < end; ++i) ranks(order[static_cast<std::size_t>(i)]) = avg;
        start = end;
    }
    return ranks;
}

FriedmanResult friedman_test(const Eigen::MatrixXd& scores, bool higher_is_better, double alpha) {
    const Index n = scores.rows();
    const Index k = scores.cols();
    if (n < 2 || k < 2) throw ConfigError("Friedman test needs at least 2 datasets and 2 algorithms");
    if (!scores.allFinite()) throw ConfigError("Friedman scores must be finite");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");

    FriedmanResult r;
    r.alpha = alpha;
    r.ranks.resize(n, k);
    for (Index i = 0; i < n; ++i) r.ranks.row(i) = rank_row(scores.row(i).transpose(), higher_is_better).transpose();
    r.mean_ranks = r.ranks.colwise().mean().transpose();

    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    r.statistic = 12.0 * nd / (kd * (kd + 1.0)) * (r.mean_ranks.squaredNorm() - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
    r.statistic = std::max(0.0, r.statistic);
    const boost::math::chi_squared chi2(kd - 1.0);
    r.p_value = boost::math::cdf(boost::math::complement(chi2, r.statistic));

    const double denom = nd * (kd - 1.0) - r.statistic;
    if (denom > 0) {
        r.iman_davenport = (nd - 1.0) * r.statistic / denom;
        const boost::math::fisher_f f(kd - 1.0, (kd - 1.0) * (nd - 1.0));
        r.iman_davenport_p = boost::math::cdf(boost::math::complement(f, r.iman_davenport));
    } else {
        // Every dataset ranks the algorithms identically.
        r.iman_davenport = std::numeric_limits<double>::infinity();
        r.iman_davenport_p = 0.0;
    }
    r.significant = r.p_value < alpha;
    return r;
}

double nemenyi_q(int k, double alpha) {
    if (k < 2 || k > 20) throw ConfigError("Nemenyi table covers 2..20 algorithms, got " + std::to_string(k));
    const auto idx = static_cast<std::size_t>(k - 2);
    if (std::abs(alpha - 0.05) < 1e-12) return kQ005[idx];
    if (std::abs(alpha - 0.10) < 1e-12) return kQ010[idx];
    throw ConfigError("Nemenyi table supports alpha 0.05 and 0.10 only");
}

double nemenyi_cd(int k, int n, double alpha) {
    if (n < 1) throw ConfigError("Nemenyi CD needs at least one dataset");
    return nemenyi_q(k, alpha) * std::sqrt(static_cast<double>(k) * (k + 1) / (6.0 * n));
}

}  // namespace affcm
