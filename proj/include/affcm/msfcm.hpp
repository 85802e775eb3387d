#ifndef AFFCM_MSFCM_HPP
#define AFFCM_MSFCM_HPP

#include "affcm/core.hpp"
#include "affcm/distance.hpp"
#include "affcm/fcm.hpp"

namespace affcm {

using SampleMask = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Second smallest distance of sample j (D_j^(2)).
template <typename Scalar>
Scalar second_nearest_distance(const DistanceTable<Scalar>& table, Index j) {
    if (table.order) return table.dist((*table.order)(1, j), j);
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < table.clusters(); ++i) {
        if (i != table.nearest(j)) best = std::min(best, table.dist(i, j));
    }
    return best;
}

/**
 * Global-bound filter: sample j keeps its nearest center through the next
 * update when D_j^(2) - max_i delta_i >= D_j^(1) + delta_{I*_j}.
 */
template <typename Scalar>
SampleMask global_bound_filter(const DistanceTable<Scalar>& table, const Vector<Scalar>& displacements,
                         int threads = 1) {
    if (displacements.size() != table.clusters()) throw ConfigError("one displacement per center required");
    const Scalar max_shift = displacements.maxCoeff();
    SampleMask q(table.samples());
    parallel_for(table.samples(), threads, [&](Index begin, Index end) {
        for (Index j = begin; j < end; ++j) {
            const Index best = table.nearest(j);
            q(j) = second_nearest_distance(table, j) - max_shift >= table.dist(best, j) + displacements(best);
        }
    });
    return q;
}

/// M_j = [1 + (c-1) (D_j^(1) / D_j^(c))^(2/(m-1))]^-1; 1/c when all distances are zero.
template <typename Scalar>
Scalar nearest_membership_target(const DistanceTable<Scalar>& table, Index j, Scalar m) {
    const Index c = table.clusters();
    const Scalar nearest = table.nearest_distance(j);
    const Scalar farthest = table.order ? table.dist((*table.order)(c - 1, j), j) : table.dist.col(j).maxCoeff();
    const Scalar ratio = farthest > Scalar(0) ? nearest / farthest : Scalar(1);
    return Scalar(1) / (Scalar(1) + Scalar(c - 1) * std::pow(ratio, membership_exponent(m)));
}

/**
 * Membership scaling for filtered samples: the nearest center's grade becomes
 * M_j and the other grades are multiplied by beta_j = (1 - M_j) / (1 - u_{I*_j, j}).
 * Columns outside `filtered`, and columns that are already hard
 * (u_{I*_j, j} = 1, where beta_j is undefined), are left as they are.
 */
template <typename Scalar>
MembershipMatrix<Scalar> msfcm_scale(const MembershipMatrix<Scalar>& memberships, const DistanceTable<Scalar>& table,
                                     const SampleMask& filtered, Scalar m, int threads = 1) {
    if (memberships.samples() != table.samples() || filtered.size() != table.samples()) {
        throw ConfigError("membership, distance and filter shapes disagree");
    }
    Matrix<Scalar> u = memberships.grades();
    parallel_for(table.samples(), threads, [&](Index begin, Index end) {
        for (Index j = begin; j < end; ++j) {
            if (!filtered(j)) continue;
            const Index best = table.nearest(j);
            const Scalar current = u(best, j);
            if (current >= Scalar(1)) continue;
            const Scalar target = nearest_membership_target(table, j, m);
            const Scalar beta = (Scalar(1) - target) / (Scalar(1) - current);
            u.col(j) *= beta;
            u(best, j) = target;
        }
    });
    return MembershipMatrix<Scalar>(std::move(u));
}

/// Filtered samples whose nearest-center grade would drop under msfcm_scale (M_j < u_{I*_j, j}).
template <typename Scalar>
Index msfcm_decreasing_columns(const MembershipMatrix<Scalar>& memberships, const DistanceTable<Scalar>& table,
                               const SampleMask& filtered, Scalar m) {
    Index count = 0;
    for (Index j = 0; j < table.samples(); ++j) {
        if (filtered(j) && nearest_membership_target(table, j, m) < memberships(table.nearest(j), j)) ++count;
    }
    return count;
}

}  // namespace affcm

#endif
