#include "affcm/metrics.hpp"

#include <cmath>

namespace affcm {

namespace {

double pairs(double k) { return k * (k - 1.0) / 2.0; }

double entropy(const Eigen::VectorXd& counts, double n) {
    double h = 0;
    for (Index i = 0; i < counts.size(); ++i) {
        if (counts(i) > 0) h -= counts(i) / n * std::log(counts(i) / n);
    }
    return h;
}

}  // namespace

ExternalScores external_scores(const IndexVector& partition, const IndexVector& labels, NmiNormalization nmi_norm) {
    if (partition.size() != labels.size()) throw ConfigError("partition and labels differ in length");
    if (partition.size() > 0 && partition.minCoeff() < 0) throw ConfigError("partition labels must be non-negative");

    int classes = 0;
    int clusters = 0;
    for (Index j = 0; j < labels.size(); ++j) {
        if (labels(j) == kNoiseLabel) continue;
        classes = std::max(classes, labels(j) + 1);
        clusters = std::max(clusters, partition(j) + 1);
    }
    // rows: classes, columns: clusters
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(classes, clusters);
    for (Index j = 0; j < labels.size(); ++j) {
        if (labels(j) != kNoiseLabel) table(labels(j), partition(j)) += 1.0;
    }

    ExternalScores out;
    const double n = table.sum();
    out.evaluated = static_cast<Index>(n);
    if (n == 0) return out;

    const Eigen::VectorXd class_sizes = table.rowwise().sum();
    const Eigen::VectorXd cluster_sizes = table.colwise().sum().transpose();

    double index = 0;
    for (Index i = 0; i < table.size(); ++i) index += pairs(table.data()[i]);
    double class_pairs = 0;
    for (Index i = 0; i < classes; ++i) class_pairs += pairs(class_sizes(i));
    double cluster_pairs = 0;
    for (Index k = 0; k < clusters; ++k) cluster_pairs += pairs(cluster_sizes(k));
    const double total_pairs = pairs(n);
    const double expected = total_pairs > 0 ? class_pairs * cluster_pairs / total_pairs : 0.0;
    const double maximum = 0.5 * (class_pairs + cluster_pairs);
    out.ari = maximum == expected ? 1.0 : (index - expected) / (maximum - expected);

    double mutual = 0;
    for (Index i = 0; i < classes; ++i) {
        for (Index k = 0; k < clusters; ++k) {
            const double nik = table(i, k);
            if (nik > 0) mutual += nik / n * std::log(n * nik / (class_sizes(i) * cluster_sizes(k)));
        }
    }
    const double h_class = entropy(class_sizes, n);
    const double h_cluster = entropy(cluster_sizes, n);
    double norm = 0;
    switch (nmi_norm) {
        case NmiNormalization::arithmetic: norm = 0.5 * (h_class + h_cluster); break;
        case NmiNormalization::geometric: norm = std::sqrt(h_class * h_cluster); break;
        case NmiNormalization::max: norm = std::max(h_class, h_cluster); break;
    }
    if (norm > 0) {
        out.nmi = std::clamp(mutual / norm, 0.0, 1.0);
    } else {
        out.nmi = (h_class == 0 && h_cluster == 0) ? 1.0 : 0.0;
    }

    double f = 0;
    for (Index i = 0; i < classes; ++i) {
        if (class_sizes(i) == 0) continue;
        double best = 0;
        for (Index k = 0; k < clusters; ++k) {
            best = std::max(best, 2.0 * table(i, k) / (class_sizes(i) + cluster_sizes(k)));
        }
        f += class_sizes(i) / n * best;
    }
    out.f_star = f;
    return out;
}

}  // namespace affcm
