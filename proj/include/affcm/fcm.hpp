#ifndef AFFCM_FCM_HPP
#define AFFCM_FCM_HPP

#include "affcm/core.hpp"
#include "affcm/distance.hpp"
#include "affcm/parallel.hpp"

namespace affcm {

/// Exponent 2 / (m - 1) applied to distance ratios in the membership update.
template <typename Scalar>
Scalar membership_exponent(Scalar m) {
    return Scalar(2) / (m - Scalar(1));
}

/**
 * Fuzzy membership update u_ij = [sum_k (d_ij / d_kj)^(2/(m-1))]^-1.
 *
 * Each column is evaluated as w_k / sum(w) with w_k = (D_j^(1) / d_kj)^(2/(m-1)),
 * which keeps every weight in (0, 1]. A sample sitting exactly on a center gets
 * membership 1 in the first such center and 0 elsewhere.
 */
template <typename Scalar>
MembershipMatrix<Scalar> update_memberships(const DistanceTable<Scalar>& table, Scalar m, int threads = 1) {
    if (!(m > Scalar(1))) throw ConfigError("fuzzifier m must be > 1");
    const Index c = table.clusters();
    const Index n = table.samples();
    const Scalar e = membership_exponent(m);
    Matrix<Scalar> u(c, n);
    parallel_for(n, threads, [&](Index begin, Index end) {
        for (Index j = begin; j < end; ++j) {
            const Index best = table.nearest(j);
            const Scalar d1 = table.dist(best, j);
            if (d1 == Scalar(0)) {
                u.col(j).setZero();
                u(best, j) = Scalar(1);
                continue;
            }
            Scalar total = 0;
            for (Index k = 0; k < c; ++k) {
                const Scalar w = std::pow(d1 / table.dist(k, j), e);
                u(k, j) = w;
                total += w;
            }
            u.col(j) /= total;
        }
    });
    return MembershipMatrix<Scalar>(std::move(u));
}

/// Center weights below this are treated as an empty cluster.
inline constexpr double kEmptyClusterWeight = 1e-300;

/**
 * Weighted-mean center update v_i = sum_j u_ij^m x_j / sum_j u_ij^m.
 *
 * `grades` is c x n, `samples` n x p. A center whose total weight falls below
 * kEmptyClusterWeight is re-seeded at the sample farthest from its nearest
 * live center; re-seeded centers count as live for any later re-seed.
 */
template <typename DerivedX, typename DerivedU>
Matrix<typename DerivedX::Scalar> update_centers(const Eigen::MatrixBase<DerivedX>& samples,
                                                 const Eigen::MatrixBase<DerivedU>& grades,
                                                 typename DerivedX::Scalar m) {
    using Scalar = typename DerivedX::Scalar;
    if (grades.cols() != samples.rows()) {
        throw ConfigError("membership columns do not match sample count");
    }
    const Matrix<Scalar> weights = grades.array().pow(m).matrix();
    const Vector<Scalar> totals = weights.rowwise().sum();
    Matrix<Scalar> centers = weights * samples;

    std::vector<Index> empty;
    std::vector<Index> live;
    for (Index i = 0; i < centers.rows(); ++i) {
        if (totals(i) < Scalar(kEmptyClusterWeight)) {
            empty.push_back(i);
        } else {
            centers.row(i) /= totals(i);
            live.push_back(i);
        }
    }
    for (Index i : empty) {
        Index worst = 0;
        Scalar worst_dist = -1;
        for (Index j = 0; j < samples.rows(); ++j) {
            Scalar nearest = std::numeric_limits<Scalar>::infinity();
            for (Index k : live) nearest = std::min(nearest, (samples.row(j) - centers.row(k)).squaredNorm());
            if (nearest > worst_dist) {
                worst_dist = nearest;
                worst = j;
            }
        }
        centers.row(i) = samples.row(worst);
        live.push_back(i);
    }
    return centers;
}

template <typename Scalar>
CentroidSet<Scalar> update_centers(const Dataset<Scalar>& data, const MembershipMatrix<Scalar>& memberships,
                                   Scalar m) {
    return CentroidSet<Scalar>(update_centers(data.samples(), memberships.grades(), m));
}

/// Per-center Euclidean distance between two center matrices of equal shape.
template <typename DerivedA, typename DerivedB>
Vector<typename DerivedA::Scalar> center_displacements(const Eigen::MatrixBase<DerivedA>& next,
                                                       const Eigen::MatrixBase<DerivedB>& prev) {
    return (next - prev).rowwise().norm();
}

}  // namespace affcm

#endif
