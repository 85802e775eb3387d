#ifndef AFFCM_BENCH_HPP
#define AFFCM_BENCH_HPP

#include "affcm/engine.hpp"
#include "affcm/io.hpp"
#include "affcm/stats.hpp"

#include <map>

namespace affcm {

struct BenchConfig {
    int clusters = 2;
    std::vector<Algorithm> algorithms = {Algorithm::fcm, Algorithm::msfcm, Algorithm::amfcm};
    int trials = 10;
    std::uint64_t seed = 0;
    double fuzzifier = 2.0;
    double epsilon = 1e-6;
    int max_iter = 1000;
    InitMethod init = InitMethod::distinct_sample_draw;
    int trial_threads = 1;   ///< trials evaluated concurrently
    int kernel_threads = 1;  ///< threads inside each run
};

/// Seed of trial k; every algorithm starts trial k from the centers this seed produces.
inline std::uint64_t trial_seed(std::uint64_t base, int trial) { return base + static_cast<std::uint64_t>(trial); }

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    bool converged = false;
    std::int64_t nanos = 0;
    double j_fuzzy = 0;
    double j_hard = 0;
    ValidityReport metrics;
    Matrix<double> initial_centers;
};

struct AlgorithmSummary {
    Algorithm algorithm = Algorithm::fcm;
    std::vector<TrialRecord> trials;
    std::map<std::string, double> mean;
    std::map<std::string, double> std;
};

struct BenchReport {
    std::string dataset;
    int clusters = 0;
    int trials = 0;
    std::vector<AlgorithmSummary> algorithms;

    const AlgorithmSummary& find(Algorithm a) const;
};

/// Value of a named metric for one trial: iterations, nanos, jFuzzy, jHard, pc, dbi, xb, fStar, ari, nmi.
std::optional<double> metric_value(const TrialRecord& t, std::string_view metric);

/// Whether larger values of `metric` are better; throws ConfigError for unknown names.
bool higher_is_better(std::string_view metric);

const std::vector<std::string>& metric_names();

BenchReport run_bench(const Dataset<double>& data, const std::string& dataset_name, const BenchConfig& cfg);

json bench_to_json(const BenchReport& report);
BenchReport bench_from_json(const json& j);

/**
 * Friedman test and Nemenyi CD over several bench reports (one per dataset),
 * using the mean of `metric` per algorithm as the score.
 */
json compare_reports(const std::vector<BenchReport>& reports, const std::string& metric, double alpha);

}  // namespace affcm

#endif
