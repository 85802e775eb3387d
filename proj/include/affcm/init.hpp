#ifndef AFFCM_INIT_HPP
#define AFFCM_INIT_HPP

#include "affcm/core.hpp"
#include "affcm/fcm.hpp"
#include "affcm/random.hpp"

#include <numeric>

namespace affcm {

/**
 * Indices of `count` distinct rows out of `n`, by a partial Fisher-Yates
 * shuffle: for k = 0..count-1, swap slot k with slot k + uniform_index(n - k).
 */
inline std::vector<Index> draw_distinct_indices(Index n, Index count, Rng& rng) {
    std::vector<Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Index(0));
    for (Index k = 0; k < count; ++k) {
        const auto r = k + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n - k)));
        std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(r)]);
    }
    idx.resize(static_cast<std::size_t>(count));
    return idx;
}

/// Random column-stochastic c x n matrix: uniform draws in column-major order, each column normalized.
template <typename Scalar>
Matrix<Scalar> random_membership(Index clusters, Index samples, Rng& rng) {
    Matrix<Scalar> u(clusters, samples);
    for (Index j = 0; j < samples; ++j) {
        for (Index i = 0; i < clusters; ++i) u(i, j) = static_cast<Scalar>(rng.uniform());
        const Scalar total = u.col(j).sum();
        if (total > Scalar(0)) {
            u.col(j) /= total;
        } else {
            u.col(j).setConstant(Scalar(1) / Scalar(clusters));
        }
    }
    return u;
}

/**
 * Initial centers for a run. Identical (data, cfg) gives identical centers.
 *
 * distinct-sample-draw picks cfg.clusters distinct sample rows; random-membership
 * draws a random stochastic U and applies the weighted-mean center update.
 */
template <typename Scalar>
CentroidSet<Scalar> initialize_centers(const Dataset<Scalar>& data, const RunConfig& cfg) {
    cfg.validate();
    const Index c = cfg.clusters;
    Rng rng(cfg.seed);
    switch (cfg.init) {
        case InitMethod::distinct_sample_draw: {
            if (c > data.size()) {
                throw ConfigError("cannot draw " + std::to_string(c) + " distinct centers from " +
                                  std::to_string(data.size()) + " samples");
            }
            const auto rows = draw_distinct_indices(data.size(), c, rng);
            Matrix<Scalar> centers(c, data.dim());
            for (Index i = 0; i < c; ++i) centers.row(i) = data.samples().row(rows[static_cast<std::size_t>(i)]);
            return CentroidSet<Scalar>(std::move(centers));
        }
        case InitMethod::random_membership: {
            const Matrix<Scalar> u = random_membership<Scalar>(c, data.size(), rng);
            return CentroidSet<Scalar>(update_centers(data.samples(), u, static_cast<Scalar>(cfg.fuzzifier)));
        }
    }
    throw ConfigError("unknown init method");
}

}  // namespace affcm

#endif
