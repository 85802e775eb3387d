#ifndef AFFCM_ENGINE_HPP
#define AFFCM_ENGINE_HPP

#include "affcm/amfcm.hpp"
#include "affcm/core.hpp"
#include "affcm/distance.hpp"
#include "affcm/fcm.hpp"
#include "affcm/init.hpp"
#include "affcm/metrics.hpp"
#include "affcm/msfcm.hpp"

#include <chrono>
#include <functional>
#include <type_traits>

/**
 * @file engine.hpp
 * @brief Alternating-optimization loop shared by FCM, MSFCM and AMFCM.
 *
 * One iteration starting from centers V:
 *
 *   FCM    d(V) -> U -> V' = centers(U)
 *   MSFCM  d(V) -> U -> Vbar = centers(U), delta = |Vbar - V| -> Q -> U~ -> V' = centers(U~)
 *   AMFCM  d(V) -> U -> Vbar = centers(U), delta = |Vbar - V| -> P -> U~ -> V' = centers(U~)
 *
 * and stops once ||V' - V||_F < epsilon.
 */

namespace affcm {

struct IterationRecord {
    int t = 0;
    double fuzzy_objective = 0;  ///< J_Fuzzy of the grades that produced V' against V'
    double hard_objective = 0;   ///< J_Hard of V' under nearest-center assignment
    double drift = 0;            ///< ||V' - V||_F
    Index filtered_samples = 0;  ///< samples with a non-empty filter result
    Index filtered_pairs = 0;    ///< flagged (center, sample) pairs; |Q| for MSFCM
    std::int64_t nanos = 0;

    bool operator==(const IterationRecord&) const = default;
};

template <typename Scalar = double>
struct RunTrace {
    Algorithm algorithm = Algorithm::fcm;
    RunConfig config;
    std::vector<IterationRecord> records;
    int iterations = 0;
    bool converged = false;
    Matrix<Scalar> centers;
    /// Grades that produced the final centers (U for FCM, U~ for the scaled engines).
    Matrix<Scalar> memberships;
    /// First t with filtered_samples / n >= 0.5; annotation only.
    std::optional<int> stage_b_start;
    std::optional<ValidityReport> metrics;

    /// (t, filtered_samples / n) per iteration.
    std::vector<std::pair<int, double>> filter_rate() const {
        std::vector<std::pair<int, double>> out;
        const auto n = static_cast<double>(memberships.cols());
        for (const auto& r : records) out.emplace_back(r.t, n > 0 ? static_cast<double>(r.filtered_samples) / n : 0.0);
        return out;
    }

    std::int64_t total_nanos() const {
        std::int64_t s = 0;
        for (const auto& r : records) s += r.nanos;
        return s;
    }
};

/// Everything computed inside one iteration, exposed to observers.
template <typename Scalar>
struct IterationView {
    int t;
    Algorithm algorithm;
    const Matrix<Scalar>& centers;            ///< V at the start of the iteration
    const DistanceTable<Scalar>& distances;   ///< d(V)
    const MembershipMatrix<Scalar>& memberships;  ///< U from d(V)
    const Matrix<Scalar>& tentative_centers;  ///< centers(U); equals next_centers for FCM
    const Vector<Scalar>& displacements;      ///< |tentative - V| per center
    const SampleMask* global_bound;                 ///< MSFCM only
    const AffinitySets* affinity;             ///< AMFCM only
    const MembershipMatrix<Scalar>& scaled;   ///< grades fed to the final center update
    const Matrix<Scalar>& next_centers;       ///< V'
    const DistanceTable<Scalar>& next_distances;  ///< d(V')
};

template <typename Scalar>
struct EngineOptions {
    bool record_timing = true;
    /// Called after every iteration.
    std::function<void(const IterationView<Scalar>&)> observer;
    /// Lets tests tamper with the displacements before they reach the filter.
    std::function<void(Vector<Scalar>&)> displacement_hook;
};

namespace detail {

template <typename Scalar>
std::optional<int> stage_b(const std::vector<IterationRecord>& records, Index n) {
    for (const auto& r : records) {
        if (2 * r.filtered_samples >= n) return r.t;
    }
    return std::nullopt;
}

}  // namespace detail

/**
 * Runs the configured algorithm from `initial` centers (or from
 * initialize_centers when none are given).
 */
template <typename Scalar>
RunTrace<Scalar> run(const Dataset<Scalar>& data, const RunConfig& cfg,
                     std::type_identity_t<std::optional<CentroidSet<Scalar>>> initial = std::nullopt,
                     const std::type_identity_t<EngineOptions<Scalar>>& options = {}) {
    cfg.validate();
    if (initial && initial->count() != cfg.clusters) throw ConfigError("initial centers do not match cluster count");
    if (initial && initial->dim() != data.dim()) throw ConfigError("initial centers do not match feature count");
    const CentroidSet<Scalar> start = initial ? *initial : initialize_centers(data, cfg);

    const auto m = static_cast<Scalar>(cfg.fuzzifier);
    const auto eps = static_cast<Scalar>(cfg.epsilon);
    const int threads = cfg.threads;
    const auto& x = data.samples();

    RunTrace<Scalar> trace;
    trace.algorithm = cfg.algorithm;
    trace.config = cfg;

    Matrix<Scalar> centers = start.centers();
    DistanceTable<Scalar> table = compute_distances(x, centers, threads);
    MembershipMatrix<Scalar> final_grades;

    for (int t = 1; t <= cfg.max_iter; ++t) {
        const auto clock_start = std::chrono::steady_clock::now();

        const MembershipMatrix<Scalar> u = update_memberships(table, m, threads);
        Matrix<Scalar> tentative = update_centers(x, u.grades(), m);
        Vector<Scalar> shift = center_displacements(tentative, centers);

        IterationRecord rec;
        rec.t = t;
        std::optional<SampleMask> q;
        std::optional<AffinitySets> affinity;
        MembershipMatrix<Scalar> scaled = u;
        Matrix<Scalar> next;

        switch (cfg.algorithm) {
            case Algorithm::fcm:
                next = tentative;
                break;
            case Algorithm::msfcm:
                if (options.displacement_hook) options.displacement_hook(shift);
                q = global_bound_filter(table, shift, threads);
                scaled = msfcm_scale(u, table, *q, m, threads);
                next = update_centers(x, scaled.grades(), m);
                rec.filtered_samples = q->count();
                rec.filtered_pairs = rec.filtered_samples;
                break;
            case Algorithm::amfcm:
                if (options.displacement_hook) options.displacement_hook(shift);
                affinity = affinity_filter(table, shift, threads);
                scaled = amfcm_scale(table, *affinity, m, threads);
                next = update_centers(x, scaled.grades(), m);
                rec.filtered_samples = affinity->filtered_samples();
                rec.filtered_pairs = affinity->filtered_pairs();
                break;
        }

        DistanceTable<Scalar> next_table = compute_distances(x, next, threads);
        rec.drift = static_cast<double>((next - centers).norm());
        if (options.record_timing) {
            rec.nanos = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                                             clock_start)
                            .count();
        }
        rec.fuzzy_objective = static_cast<double>(fuzzy_objective(next_table, scaled.grades(), m));
        rec.hard_objective = static_cast<double>(next_table.dist.colwise().minCoeff().squaredNorm());

        if (options.observer) {
            const IterationView<Scalar> view{t,     cfg.algorithm, centers,         table,
                                             u,     tentative,     shift,           q ? &*q : nullptr,
                                             affinity ? &*affinity : nullptr,   scaled,
                                             next,  next_table};
            options.observer(view);
        }

        trace.records.push_back(rec);
        trace.iterations = t;
        centers = std::move(next);
        table = std::move(next_table);
        final_grades = std::move(scaled);
        if (rec.drift < static_cast<double>(eps)) {
            trace.converged = true;
            break;
        }
    }

    trace.centers = centers;
    trace.memberships = final_grades.grades();
    trace.stage_b_start = detail::stage_b<Scalar>(trace.records, data.size());
    return trace;
}

template <typename Scalar>
RunTrace<Scalar> run_fcm(const Dataset<Scalar>& data, RunConfig cfg,
                         std::type_identity_t<std::optional<CentroidSet<Scalar>>> initial = std::nullopt,
                         const std::type_identity_t<EngineOptions<Scalar>>& options = {}) {
    cfg.algorithm = Algorithm::fcm;
    return run(data, cfg, std::move(initial), options);
}

template <typename Scalar>
RunTrace<Scalar> run_msfcm(const Dataset<Scalar>& data, RunConfig cfg,
                           std::type_identity_t<std::optional<CentroidSet<Scalar>>> initial = std::nullopt,
                           const std::type_identity_t<EngineOptions<Scalar>>& options = {}) {
    cfg.algorithm = Algorithm::msfcm;
    return run(data, cfg, std::move(initial), options);
}

template <typename Scalar>
RunTrace<Scalar> run_amfcm(const Dataset<Scalar>& data, RunConfig cfg,
                           std::type_identity_t<std::optional<CentroidSet<Scalar>>> initial = std::nullopt,
                           const std::type_identity_t<EngineOptions<Scalar>>& options = {}) {
    cfg.algorithm = Algorithm::amfcm;
    return run(data, cfg, std::move(initial), options);
}

/// Attaches validity indices computed from the final centers and grades.
template <typename Scalar>
void attach_metrics(RunTrace<Scalar>& trace, const Dataset<Scalar>& data) {
    trace.metrics =
        evaluate(data, trace.memberships, trace.centers, static_cast<Scalar>(trace.config.fuzzifier));
}

}  // namespace affcm

#endif
