#ifndef AFFCM_AMFCM_HPP
#define AFFCM_AMFCM_HPP

#include "affcm/core.hpp"
#include "affcm/distance.hpp"
#include "affcm/fcm.hpp"

namespace affcm {

/**
 * Per-center affinity filter. Center i is a non-affinity center of sample j when
 *
 *     d_ij - delta_i >= D_j^(1) + delta_{I*_j},   i != I*_j.
 *
 * The left side lower-bounds the distance to center i after it moves by at most
 * delta_i; the right side upper-bounds the distance to the current nearest
 * center. Equality counts as filtered. The nearest center is always excluded.
 */
template <typename Scalar>
AffinitySets affinity_filter(const DistanceTable<Scalar>& table, const Vector<Scalar>& displacements,
                           int threads = 1) {
    if (displacements.size() != table.clusters()) throw ConfigError("one displacement per center required");
    BoolMask mask(table.clusters(), table.samples());
    parallel_for(table.samples(), threads, [&](Index begin, Index end) {
        for (Index j = begin; j < end; ++j) {
            const Index best = table.nearest(j);
            const Scalar bound = table.dist(best, j) + displacements(best);
            for (Index i = 0; i < table.clusters(); ++i) {
                mask(i, j) = i != best && table.dist(i, j) - displacements(i) >= bound;
            }
        }
    });
    return AffinitySets(std::move(mask), table.nearest);
}

/**
 * Scaled memberships from distances, summing only over the centers kept for
 * each sample:
 *
 *     u~_ij = [sum_{k not in P_j} (d_ij / d_kj)^(2/(m-1))]^-1,  i not in P_j
 *     u~_ij = 0,                                                i in P_j
 *
 * A zero distance to the nearest center yields a one-hot column.
 */
template <typename Scalar>
MembershipMatrix<Scalar> amfcm_scale(const DistanceTable<Scalar>& table, const AffinitySets& affinity, Scalar m,
                                     int threads = 1) {
    if (!(m > Scalar(1))) throw ConfigError("fuzzifier m must be > 1");
    if (affinity.samples() != table.samples() || affinity.clusters() != table.clusters()) {
        throw ConfigError("affinity and distance shapes disagree");
    }
    const Index c = table.clusters();
    const Scalar e = membership_exponent(m);
    Matrix<Scalar> u(c, table.samples());
    parallel_for(table.samples(), threads, [&](Index begin, Index end) {
        for (Index j = begin; j < end; ++j) {
            const Index best = table.nearest(j);
            const Scalar d1 = table.dist(best, j);
            u.col(j).setZero();
            if (d1 == Scalar(0)) {
                u(best, j) = Scalar(1);
                continue;
            }
            for (Index i = 0; i < c; ++i) {
                if (affinity.filtered(i, j)) continue;
                Scalar total = 0;
                for (Index k = 0; k < c; ++k) {
                    if (!affinity.filtered(k, j)) total += std::pow(table.dist(i, j) / table.dist(k, j), e);
                }
                u(i, j) = Scalar(1) / total;
            }
        }
    });
    return MembershipMatrix<Scalar>(std::move(u));
}

/// Same scaling as amfcm_scale, computed by zeroing filtered grades of U and renormalizing each column.
template <typename Scalar>
MembershipMatrix<Scalar> amfcm_scale_renormalized(const MembershipMatrix<Scalar>& memberships,
                                                  const AffinitySets& affinity) {
    if (affinity.samples() != memberships.samples() || affinity.clusters() != memberships.clusters()) {
        throw ConfigError("affinity and membership shapes disagree");
    }
    Matrix<Scalar> u = affinity.mask().select(Matrix<Scalar>::Zero(memberships.clusters(), memberships.samples()),
                                              memberships.grades());
    for (Index j = 0; j < u.cols(); ++j) {
        const Scalar kept = u.col(j).sum();
        if (kept > Scalar(0)) u.col(j) /= kept;
    }
    return MembershipMatrix<Scalar>(std::move(u));
}

template <typename Scalar>
struct AlphaFactors {
    /// alpha_j = 1 / (1 - sum_{i in P_j} u_ij); 1 where P_j is empty, +inf where the sum reaches 1.
    Vector<Scalar> values;
    Index filtered = 0;    ///< samples with non-empty P_j
    Index at_least_two = 0;  ///< filtered samples with alpha_j >= 2
    Index degenerate = 0;  ///< filtered samples whose removed mass is >= 1
};

/// Factor by which the kept grades of each sample grow under the affinity scaling.
template <typename Scalar>
AlphaFactors<Scalar> alpha_factors(const MembershipMatrix<Scalar>& memberships, const AffinitySets& affinity) {
    AlphaFactors<Scalar> out;
    out.values = Vector<Scalar>::Ones(memberships.samples());
    for (Index j = 0; j < memberships.samples(); ++j) {
        if (affinity.count(j) == 0) continue;
        ++out.filtered;
        Scalar removed = 0;
        for (Index i = 0; i < memberships.clusters(); ++i) {
            if (affinity.filtered(i, j)) removed += memberships(i, j);
        }
        if (removed >= Scalar(1)) {
            ++out.degenerate;
            out.values(j) = std::numeric_limits<Scalar>::infinity();
            continue;
        }
        out.values(j) = Scalar(1) / (Scalar(1) - removed);
        if (out.values(j) >= Scalar(2)) ++out.at_least_two;
    }
    return out;
}

}  // namespace affcm

#endif
