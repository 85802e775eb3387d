#ifndef AFFCM_CORE_HPP
#define AFFCM_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/**
 * @file core.hpp
 * @brief Domain types shared by the clustering engines.
 *
 * Samples are stored one per row (n x p). Centers are one per row (c x p).
 * Memberships and distances are c x n, one column per sample, so a column
 * is everything known about a single sample.
 */

namespace affcm {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IndexVector = Eigen::VectorXi;
using BoolMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Bad user input: shapes, parameters, files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A domain invariant was violated (non-finite values, non-stochastic columns, ...).
class InvariantError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Label used for samples that belong to no ground-truth class (e.g. injected noise).
inline constexpr int kNoiseLabel = -1;

template <typename Scalar>
constexpr Scalar default_stochastic_tolerance() {
    return std::max<Scalar>(Scalar(1e-12), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
}

namespace detail {

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& m, std::string_view what) {
    if (!m.allFinite()) {
        throw InvariantError(std::string(what) + " contains NaN or Inf");
    }
}

}  // namespace detail

/**
 * n x p sample matrix with optional ground-truth labels and row ids.
 *
 * Labels are class ids in [0, L); kNoiseLabel marks samples that are excluded
 * from external validity scores.
 */
template <typename Scalar = double>
class Dataset {
public:
    Dataset() = default;

    explicit Dataset(Matrix<Scalar> samples,
                     std::optional<IndexVector> labels = std::nullopt,
                     std::optional<std::vector<std::string>> ids = std::nullopt)
        : samples_(std::move(samples)), labels_(std::move(labels)), ids_(std::move(ids)) {
        if (samples_.rows() < 1 || samples_.cols() < 1) {
            throw InvariantError("dataset needs at least one sample and one feature");
        }
        detail::require_finite(samples_, "dataset");
        if (labels_) {
            if (labels_->size() != samples_.rows()) {
                throw InvariantError("label count does not match sample count");
            }
            if ((labels_->array() < kNoiseLabel).any()) {
                throw InvariantError("labels must be non-negative class ids or -1 for noise");
            }
        }
        if (ids_ && static_cast<Index>(ids_->size()) != samples_.rows()) {
            throw InvariantError("row id count does not match sample count");
        }
    }

    const Matrix<Scalar>& samples() const { return samples_; }
    const std::optional<IndexVector>& labels() const { return labels_; }
    const std::optional<std::vector<std::string>>& ids() const { return ids_; }

    Index size() const { return samples_.rows(); }
    Index dim() const { return samples_.cols(); }

    /// Number of distinct non-noise classes (max label + 1), 0 when unlabeled.
    int class_count() const {
        if (!labels_ || labels_->size() == 0) return 0;
        return labels_->maxCoeff() + 1;
    }

private:
    Matrix<Scalar> samples_;
    std::optional<IndexVector> labels_;
    std::optional<std::vector<std::string>> ids_;
};

/// c x p centers plus the distance each center moved in its last update.
template <typename Scalar = double>
class CentroidSet {
public:
    CentroidSet() = default;

    explicit CentroidSet(Matrix<Scalar> centers)
        : CentroidSet(centers, Vector<Scalar>::Zero(centers.rows())) {}

    CentroidSet(Matrix<Scalar> centers, Vector<Scalar> displacements)
        : centers_(std::move(centers)), displacements_(std::move(displacements)) {
        if (centers_.rows() < 2) throw InvariantError("need at least two centers");
        if (centers_.cols() < 1) throw InvariantError("centers need at least one feature");
        if (displacements_.size() != centers_.rows()) {
            throw InvariantError("one displacement per center required");
        }
        detail::require_finite(centers_, "centers");
        detail::require_finite(displacements_, "displacements");
        if ((displacements_.array() < Scalar(0)).any()) {
            throw InvariantError("displacements must be non-negative");
        }
    }

    const Matrix<Scalar>& centers() const { return centers_; }
    const Vector<Scalar>& displacements() const { return displacements_; }
    Index count() const { return centers_.rows(); }
    Index dim() const { return centers_.cols(); }

private:
    Matrix<Scalar> centers_;
    Vector<Scalar> displacements_;
};

/// c x n column-stochastic fuzzy assignment.
template <typename Scalar = double>
class MembershipMatrix {
public:
    MembershipMatrix() = default;

    explicit MembershipMatrix(Matrix<Scalar> grades,
                              Scalar tolerance = default_stochastic_tolerance<Scalar>())
        : grades_(std::move(grades)) {
        detail::require_finite(grades_, "memberships");
        if ((grades_.array() < Scalar(0)).any() || (grades_.array() > Scalar(1)).any()) {
            throw InvariantError("membership grades must lie in [0, 1]");
        }
        const Vector<Scalar> sums = grades_.colwise().sum().transpose();
        if (((sums.array() - Scalar(1)).abs() > tolerance).any()) {
            throw InvariantError("membership columns must sum to 1");
        }
    }

    const Matrix<Scalar>& grades() const { return grades_; }
    Index clusters() const { return grades_.rows(); }
    Index samples() const { return grades_.cols(); }
    Scalar operator()(Index i, Index j) const { return grades_(i, j); }

private:
    Matrix<Scalar> grades_;
};

/**
 * Sample-center Euclidean distances d(i, j) = ||x_j - v_i|| with the nearest
 * center per sample. `order`, when present, lists center indices per column
 * in ascending distance, so dist(order(k, j), j) is the (k+1)-th smallest.
 */
template <typename Scalar = double>
struct DistanceTable {
    Matrix<Scalar> dist;
    IndexVector nearest;
    std::optional<Eigen::MatrixXi> order;

    Index clusters() const { return dist.rows(); }
    Index samples() const { return dist.cols(); }

    /// Smallest distance of sample j (D_j^(1)).
    Scalar nearest_distance(Index j) const { return dist(nearest(j), j); }
};

/**
 * Per-sample non-affinity sets. mask(i, j) is true when center i cannot be
 * the nearest center of sample j after the pending update. The nearest center
 * is never flagged.
 */
class AffinitySets {
public:
    AffinitySets() = default;

    AffinitySets(BoolMask mask, IndexVector nearest) : mask_(std::move(mask)), nearest_(std::move(nearest)) {
        if (nearest_.size() != mask_.cols()) throw InvariantError("affinity shape mismatch");
        for (Index j = 0; j < mask_.cols(); ++j) {
            if (mask_(nearest_(j), j)) {
                throw InvariantError("nearest center cannot be a non-affinity center");
            }
        }
    }

    const BoolMask& mask() const { return mask_; }
    const IndexVector& nearest() const { return nearest_; }
    Index clusters() const { return mask_.rows(); }
    Index samples() const { return mask_.cols(); }

    bool filtered(Index i, Index j) const { return mask_(i, j); }
    Index count(Index j) const { return mask_.col(j).count(); }

    std::vector<int> members(Index j) const {
        std::vector<int> out;
        for (Index i = 0; i < mask_.rows(); ++i) {
            if (mask_(i, j)) out.push_back(static_cast<int>(i));
        }
        return out;
    }

    /// Number of samples with at least one non-affinity center.
    Index filtered_samples() const { return (mask_.colwise().count().array() > 0).count(); }

    /// Total number of flagged (center, sample) pairs.
    Index filtered_pairs() const { return mask_.count(); }

private:
    BoolMask mask_;
    IndexVector nearest_;
};

enum class Algorithm { fcm, msfcm, amfcm };
enum class InitMethod { distinct_sample_draw, random_membership };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::fcm: return "fcm";
        case Algorithm::msfcm: return "msfcm";
        case Algorithm::amfcm: return "amfcm";
    }
    return "?";
}

inline std::string_view to_string(InitMethod m) {
    switch (m) {
        case InitMethod::distinct_sample_draw: return "distinct-sample-draw";
        case InitMethod::random_membership: return "random-membership";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
    if (s == "fcm") return Algorithm::fcm;
    if (s == "msfcm") return Algorithm::msfcm;
    if (s == "amfcm") return Algorithm::amfcm;
    throw ConfigError("unknown algorithm '" + std::string(s) + "' (expected fcm, msfcm or amfcm)");
}

inline InitMethod parse_init_method(std::string_view s) {
    if (s == "distinct-sample-draw") return InitMethod::distinct_sample_draw;
    if (s == "random-membership") return InitMethod::random_membership;
    throw ConfigError("unknown init method '" + std::string(s) + "'");
}

struct RunConfig {
    int clusters = 2;
    double fuzzifier = 2.0;
    double epsilon = 1e-6;
    int max_iter = 1000;
    std::uint64_t seed = 0;
    InitMethod init = InitMethod::distinct_sample_draw;
    Algorithm algorithm = Algorithm::amfcm;
    /// Worker threads for per-sample kernels. 1 is the deterministic reference mode.
    int threads = 1;

    void validate() const {
        if (clusters < 2) throw ConfigError("cluster count must be at least 2");
        if (!(fuzzifier > 1.0) || !std::isfinite(fuzzifier)) throw ConfigError("fuzzifier m must be > 1");
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be > 0");
        if (max_iter < 1) throw ConfigError("maxIter must be at least 1");
        if (threads < 1) throw ConfigError("thread count must be at least 1");
    }
};

}  // namespace affcm

#endif
