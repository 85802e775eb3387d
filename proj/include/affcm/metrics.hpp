#ifndef AFFCM_METRICS_HPP
#define AFFCM_METRICS_HPP

#include "affcm/core.hpp"
#include "affcm/distance.hpp"

#include <iostream>

/**
 * @file metrics.hpp
 * @brief Objective values and internal/external validity indices.
 */

namespace affcm {

/// Crisp assignment of each sample to one of `clusters` clusters.
class HardPartition {
public:
    HardPartition() = default;
    HardPartition(IndexVector assign, int clusters) : assign_(std::move(assign)), clusters_(clusters) {
        if (clusters_ < 1) throw InvariantError("partition needs at least one cluster");
        if (assign_.size() > 0 && (assign_.minCoeff() < 0 || assign_.maxCoeff() >= clusters_)) {
            throw InvariantError("partition labels must lie in [0, c)");
        }
    }

    const IndexVector& assign() const { return assign_; }
    int clusters() const { return clusters_; }
    Index size() const { return assign_.size(); }

private:
    IndexVector assign_;
    int clusters_ = 0;
};

template <typename Scalar>
HardPartition nearest_partition(const DistanceTable<Scalar>& table) {
    return HardPartition(table.nearest, static_cast<int>(table.clusters()));
}

/// sum_i sum_j u_ij^m ||x_j - v_i||^2
template <typename DerivedX, typename DerivedU, typename DerivedV>
typename DerivedX::Scalar fuzzy_objective(const Eigen::MatrixBase<DerivedX>& samples,
                                          const Eigen::MatrixBase<DerivedU>& grades,
                                          const Eigen::MatrixBase<DerivedV>& centers, typename DerivedX::Scalar m) {
    using Scalar = typename DerivedX::Scalar;
    Scalar total = 0;
    for (Index j = 0; j < samples.rows(); ++j) {
        for (Index i = 0; i < centers.rows(); ++i) {
            const Scalar u = grades(i, j);
            if (u == Scalar(0)) continue;
            total += std::pow(u, m) * (samples.row(j) - centers.row(i)).squaredNorm();
        }
    }
    return total;
}

/// Same as above with the squared distances already available.
template <typename Scalar>
Scalar fuzzy_objective(const DistanceTable<Scalar>& table, const Matrix<Scalar>& grades, Scalar m) {
    return (grades.array().pow(m) * table.dist.array().square()).sum();
}

/// sum_j ||x_j - v_{assign_j}||^2
template <typename DerivedX, typename DerivedV>
typename DerivedX::Scalar hard_objective(const Eigen::MatrixBase<DerivedX>& samples, const HardPartition& partition,
                                         const Eigen::MatrixBase<DerivedV>& centers) {
    using Scalar = typename DerivedX::Scalar;
    if (partition.size() != samples.rows()) throw ConfigError("partition size does not match sample count");
    Scalar total = 0;
    for (Index j = 0; j < samples.rows(); ++j) {
        total += (samples.row(j) - centers.row(partition.assign()(j))).squaredNorm();
    }
    return total;
}

/// Partition coefficient (1/n) sum u_ij^2; lies in [1/c, 1].
template <typename Derived>
typename Derived::Scalar partition_coefficient(const Eigen::MatrixBase<Derived>& grades) {
    return grades.squaredNorm() / static_cast<typename Derived::Scalar>(grades.cols());
}

/// Smallest squared distance between two distinct centers.
template <typename Derived>
typename Derived::Scalar min_center_separation(const Eigen::MatrixBase<Derived>& centers) {
    using Scalar = typename Derived::Scalar;
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < centers.rows(); ++i) {
        for (Index k = i + 1; k < centers.rows(); ++k) {
            best = std::min(best, (centers.row(i) - centers.row(k)).squaredNorm());
        }
    }
    return best;
}

/**
 * Davies-Bouldin index on a hard partition, with mean *squared* distances as
 * scatter and the squared center distance as separation:
 *
 *     DBI = (1/c) sum_k max_{i != k} (S_i + S_k) / ||v_i - v_k||^2,
 *     S_i = (1/|C_i|) sum_{x_j in C_i} ||x_j - v_i||^2.
 *
 * Empty clusters contribute S_i = 0 and still act as rivals (a warning is
 * printed). Returns nullopt when two centers coincide.
 */
template <typename DerivedX, typename DerivedV>
std::optional<typename DerivedX::Scalar> davies_bouldin(const Eigen::MatrixBase<DerivedX>& samples,
                                                        const HardPartition& partition,
                                                        const Eigen::MatrixBase<DerivedV>& centers) {
    using Scalar = typename DerivedX::Scalar;
    const Index c = centers.rows();
    if (partition.size() != samples.rows()) throw ConfigError("partition size does not match sample count");
    Vector<Scalar> scatter = Vector<Scalar>::Zero(c);
    Eigen::VectorXi sizes = Eigen::VectorXi::Zero(c);
    for (Index j = 0; j < samples.rows(); ++j) {
        const int k = partition.assign()(j);
        scatter(k) += (samples.row(j) - centers.row(k)).squaredNorm();
        ++sizes(k);
    }
    for (Index k = 0; k < c; ++k) {
        if (sizes(k) > 0) {
            scatter(k) /= static_cast<Scalar>(sizes(k));
        } else {
            std::clog << "warning: davies_bouldin: cluster " << k << " is empty\n";
        }
    }
    Scalar total = 0;
    for (Index k = 0; k < c; ++k) {
        Scalar worst = -std::numeric_limits<Scalar>::infinity();
        for (Index i = 0; i < c; ++i) {
            if (i == k) continue;
            const Scalar sep = (centers.row(i) - centers.row(k)).squaredNorm();
            if (sep == Scalar(0)) return std::nullopt;
            worst = std::max(worst, (scatter(i) + scatter(k)) / sep);
        }
        total += worst;
    }
    return total / static_cast<Scalar>(c);
}

/**
 * Xie-Beni index sum u_ij^m d_ij^2 / (n min_{i != k} ||v_i - v_k||^2).
 * Returns nullopt when two centers coincide.
 */
template <typename DerivedX, typename DerivedU, typename DerivedV>
std::optional<typename DerivedX::Scalar> xie_beni(const Eigen::MatrixBase<DerivedX>& samples,
                                                  const Eigen::MatrixBase<DerivedU>& grades,
                                                  const Eigen::MatrixBase<DerivedV>& centers,
                                                  typename DerivedX::Scalar m) {
    using Scalar = typename DerivedX::Scalar;
    const Scalar sep = min_center_separation(centers);
    if (!(sep > Scalar(0))) return std::nullopt;
    return fuzzy_objective(samples, grades, centers, m) / (static_cast<Scalar>(samples.rows()) * sep);
}

enum class NmiNormalization { arithmetic, geometric, max };

struct ExternalScores {
    double f_star = 0;
    double ari = 0;
    double nmi = 0;
    Index evaluated = 0;  ///< samples with a non-noise label
};

/**
 * Agreement between a partition and ground-truth labels. Samples labelled
 * kNoiseLabel are skipped.
 *
 *  - ARI: Hubert-Arabie adjusted Rand index from the contingency table; 1 when
 *    the expected and maximum index coincide (both partitions trivial).
 *  - NMI: I(C; K) / mean(H(C), H(K)); 1 when both entropies vanish.
 *  - F*:  sum over classes of (class size / n) * max over clusters of F1.
 */
ExternalScores external_scores(const IndexVector& partition, const IndexVector& labels,
                               NmiNormalization nmi_norm = NmiNormalization::arithmetic);

/// Internal and (when labels exist) external validity of a finished run.
struct ValidityReport {
    double pc = 0;
    std::optional<double> dbi;
    std::optional<double> xb;
    std::optional<double> f_star;
    std::optional<double> ari;
    std::optional<double> nmi;

    bool operator==(const ValidityReport&) const = default;
};

template <typename Scalar>
ValidityReport evaluate(const Dataset<Scalar>& data, const Matrix<Scalar>& grades, const Matrix<Scalar>& centers,
                        Scalar m) {
    ValidityReport r;
    const auto table = compute_distances(data.samples(), centers);
    const auto partition = nearest_partition(table);
    r.pc = static_cast<double>(partition_coefficient(grades));
    if (auto v = davies_bouldin(data.samples(), partition, centers)) r.dbi = static_cast<double>(*v);
    if (auto v = xie_beni(data.samples(), grades, centers, m)) r.xb = static_cast<double>(*v);
    if (data.labels()) {
        const auto ext = external_scores(partition.assign(), *data.labels());
        if (ext.evaluated > 0) {
            r.f_star = ext.f_star;
            r.ari = ext.ari;
            r.nmi = ext.nmi;
        }
    }
    return r;
}

}  // namespace affcm

#endif
