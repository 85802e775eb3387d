#ifndef AFFCM_DATAGEN_HPP
#define AFFCM_DATAGEN_HPP

#include "affcm/core.hpp"

namespace affcm {

/// One Gaussian component with diagonal covariance.
struct MixtureComponent {
    Eigen::VectorXd mean;
    Eigen::VectorXd variances;
    Index count = 0;
};

/**
 * Draws `count` samples from each component in order; sample k of a component
 * is mean + sqrt(variances) .* z with z filled coordinate by coordinate from
 * Rng::normal(). Labels are component indices.
 */
Dataset<double> generate_gaussian_mixture(const std::vector<MixtureComponent>& components, std::uint64_t seed);

/// The three-cluster, 600-sample two-dimensional benchmark (200 samples per cluster).
std::vector<MixtureComponent> d1_components();

Dataset<double> preset_d1(std::uint64_t seed);

inline constexpr Index kD2NoiseCount = 60;

/**
 * D1 followed by kD2NoiseCount samples drawn uniformly from the box spanned by
 * the three cluster means, [10, 13] x [4, 10], labelled kNoiseLabel. The noise
 * continues the same random stream, so the first 600 rows equal preset_d1(seed).
 */
Dataset<double> preset_d2(std::uint64_t seed);

}  // namespace affcm

#endif
