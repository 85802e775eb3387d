#include "affcm/datagen.hpp"

#include "affcm/random.hpp"

namespace affcm {

namespace {

struct Generated {
    Matrix<double> samples;
    IndexVector labels;
};

Generated draw_mixture(const std::vector<MixtureComponent>& components, Rng& rng) {
    if (components.empty()) throw ConfigError("mixture needs at least one component");
    const Index p = components.front().mean.size();
    Index n = 0;
    for (const auto& comp : components) {
        if (comp.mean.size() != p || comp.variances.size() != p) {
            throw ConfigError("all mixture components need means and variances of the same dimension");
        }
        if (p == 0) throw ConfigError("mixture components need at least one dimension");
        if (!comp.mean.allFinite() || !comp.variances.allFinite()) throw ConfigError("non-finite mixture parameter");
        if ((comp.variances.array() <= 0.0).any()) throw ConfigError("variances must be positive");
        if (comp.count < 0) throw ConfigError("component counts must be non-negative");
        n += comp.count;
    }
    Generated out{Matrix<double>(n, p), IndexVector(n)};
    Index row = 0;
    for (std::size_t k = 0; k < components.size(); ++k) {
        const auto& comp = components[k];
        const Eigen::VectorXd sd = comp.variances.cwiseSqrt();
        for (Index s = 0; s < comp.count; ++s, ++row) {
            for (Index d = 0; d < p; ++d) out.samples(row, d) = comp.mean(d) + sd(d) * rng.normal();
            out.labels(row) = static_cast<int>(k);
        }
    }
    return out;
}

}  // namespace

Dataset<double> generate_gaussian_mixture(const std::vector<MixtureComponent>& components, std::uint64_t seed) {
    Rng rng(seed);
    auto g = draw_mixture(components, rng);
    if (g.samples.rows() == 0) throw ConfigError("mixture produced no samples");
    return Dataset<double>(std::move(g.samples), std::move(g.labels));
}

std::vector<MixtureComponent> d1_components() {
    auto comp = [](double mx, double my, double var) {
        return MixtureComponent{Eigen::Vector2d(mx, my), Eigen::Vector2d::Constant(var), 200};
    };
    return {comp(10, 10, 0.3), comp(13, 10, 0.8), comp(11, 4, 1.2)};
}

Dataset<double> preset_d1(std::uint64_t seed) { return generate_gaussian_mixture(d1_components(), seed); }

Dataset<double> preset_d2(std::uint64_t seed) {
    Rng rng(seed);
    auto g = draw_mixture(d1_components(), rng);
    const Index base = g.samples.rows();
    Matrix<double> samples(base + kD2NoiseCount, 2);
    IndexVector labels(base + kD2NoiseCount);
    samples.topRows(base) = g.samples;
    labels.head(base) = g.labels;
    for (Index r = base; r < base + kD2NoiseCount; ++r) {
        samples(r, 0) = 10.0 + 3.0 * rng.uniform();
        samples(r, 1) = 4.0 + 6.0 * rng.uniform();
        labels(r) = kNoiseLabel;
    }
    return Dataset<double>(std::move(samples), std::move(labels));
}

}  // namespace affcm
