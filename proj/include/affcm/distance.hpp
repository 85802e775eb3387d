#ifndef AFFCM_DISTANCE_HPP
#define AFFCM_DISTANCE_HPP

#include "affcm/core.hpp"
#include "affcm/parallel.hpp"

#include <numeric>

namespace affcm {

/**
 * Euclidean distances between every sample row of `samples` (n x p) and every
 * center row of `centers` (c x p). Ties for the nearest center go to the
 * smallest center index. Columns are independent, so the result does not
 * depend on `threads`.
 */
template <typename DerivedX, typename DerivedV>
DistanceTable<typename DerivedX::Scalar> compute_distances(const Eigen::MatrixBase<DerivedX>& samples,
                                                           const Eigen::MatrixBase<DerivedV>& centers,
                                                           int threads = 1) {
    using Scalar = typename DerivedX::Scalar;
    if (samples.cols() != centers.cols()) {
        throw ConfigError("dimension mismatch: samples have " + std::to_string(samples.cols()) +
                          " features, centers have " + std::to_string(centers.cols()));
    }
    const Index n = samples.rows();
    const Index c = centers.rows();
    DistanceTable<Scalar> table;
    table.dist.resize(c, n);
    table.nearest.resize(n);
    parallel_for(n, threads, [&](Index begin, Index end) {
        for (Index j = begin; j < end; ++j) {
            Index best = 0;
            for (Index i = 0; i < c; ++i) {
                const Scalar d = (samples.row(j) - centers.row(i)).norm();
                table.dist(i, j) = d;
                if (d < table.dist(best, j)) best = i;
            }
            table.nearest(j) = static_cast<int>(best);
        }
    });
    return table;
}

template <typename Scalar>
DistanceTable<Scalar> compute_distances(const Dataset<Scalar>& data, const CentroidSet<Scalar>& centers,
                                        int threads = 1) {
    return compute_distances(data.samples(), centers.centers(), threads);
}

/// Fills table.order with a stable ascending sort of every column.
template <typename Scalar>
void sort_columns(DistanceTable<Scalar>& table) {
    const Index c = table.clusters();
    Eigen::MatrixXi order(c, table.samples());
    std::vector<int> idx(static_cast<std::size_t>(c));
    for (Index j = 0; j < table.samples(); ++j) {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return table.dist(a, j) < table.dist(b, j); });
        for (Index k = 0; k < c; ++k) order(k, j) = idx[static_cast<std::size_t>(k)];
    }
    table.order = std::move(order);
}

/// k-th smallest distance (0-based) of sample j; uses the sorted order when present.
template <typename Scalar>
Scalar ranked_distance(const DistanceTable<Scalar>& table, Index j, Index k) {
    if (table.order) return table.dist((*table.order)(k, j), j);
    Vector<Scalar> col = table.dist.col(j);
    std::nth_element(col.data(), col.data() + k, col.data() + col.size());
    return col(k);
}

}  // namespace affcm

#endif
