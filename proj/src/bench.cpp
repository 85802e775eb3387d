#include "affcm/bench.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace affcm {

namespace {

const std::vector<std::string> kMetrics = {"iterations", "nanos", "jFuzzy", "jHard", "pc",
                                           "dbi",        "xb",    "fStar",  "ari",   "nmi"};

void summarize(AlgorithmSummary& s) {
    for (const auto& name : kMetrics) {
        std::vector<double> values;
        for (const auto& t : s.trials) {
            if (auto v = metric_value(t, name)) values.push_back(*v);
        }
        if (values.empty()) continue;
        const double n = static_cast<double>(values.size());
        double mean = 0;
        for (double v : values) mean += v;
        mean /= n;
        double var = 0;
        for (double v : values) var += (v - mean) * (v - mean);
        s.mean[name] = mean;
        s.std[name] = values.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    }
}

json trial_to_json(const TrialRecord& t) {
    json j{{"trial", t.trial},       {"seed", t.seed},       {"iterations", t.iterations},
           {"converged", t.converged}, {"nanos", t.nanos},     {"jFuzzy", t.j_fuzzy},
           {"jHard", t.j_hard},        {"metrics", validity_to_json(t.metrics)}};
    json centers = json::array();
    for (Index r = 0; r < t.initial_centers.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < t.initial_centers.cols(); ++c) row.push_back(t.initial_centers(r, c));
        centers.push_back(std::move(row));
    }
    j["initialCenters"] = std::move(centers);
    return j;
}

TrialRecord trial_from_json(const json& j) {
    TrialRecord t;
    t.trial = j.at("trial").get<int>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.iterations = j.at("iterations").get<int>();
    t.converged = j.at("converged").get<bool>();
    t.nanos = j.at("nanos").get<std::int64_t>();
    t.j_fuzzy = j.at("jFuzzy").get<double>();
    t.j_hard = j.at("jHard").get<double>();
    t.metrics = validity_from_json(j.at("metrics"));
    if (j.contains("initialCenters")) {
        const auto rows = j.at("initialCenters").get<std::vector<std::vector<double>>>();
        if (!rows.empty()) {
            t.initial_centers.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
            for (Index r = 0; r < t.initial_centers.rows(); ++r) {
                for (Index c = 0; c < t.initial_centers.cols(); ++c) {
                    t.initial_centers(r, c) = rows[static_cast<std::size_t>(r)].at(static_cast<std::size_t>(c));
                }
            }
        }
    }
    return t;
}

}  // namespace

const AlgorithmSummary& BenchReport::find(Algorithm a) const {
    for (const auto& s : algorithms) {
        if (s.algorithm == a) return s;
    }
    throw ConfigError("report has no results for " + std::string(to_string(a)));
}

const std::vector<std::string>& metric_names() { return kMetrics; }

std::optional<double> metric_value(const TrialRecord& t, std::string_view metric) {
    if (metric == "iterations") return static_cast<double>(t.iterations);
    if (metric == "nanos" || metric == "time") return static_cast<double>(t.nanos);
    if (metric == "jFuzzy") return t.j_fuzzy;
    if (metric == "jHard") return t.j_hard;
    if (metric == "pc") return t.metrics.pc;
    if (metric == "dbi") return t.metrics.dbi;
    if (metric == "xb") return t.metrics.xb;
    if (metric == "fStar") return t.metrics.f_star;
    if (metric == "ari") return t.metrics.ari;
    if (metric == "nmi") return t.metrics.nmi;
    throw ConfigError("unknown metric '" + std::string(metric) + "'");
}

bool higher_is_better(std::string_view metric) {
    if (metric == "pc" || metric == "fStar" || metric == "ari" || metric == "nmi") return true;
    if (metric == "iterations" || metric == "nanos" || metric == "time" || metric == "jFuzzy" || metric == "jHard" ||
        metric == "dbi" || metric == "xb") {
        return false;
    }
    throw ConfigError("unknown metric '" + std::string(metric) + "'");
}

BenchReport run_bench(const Dataset<double>& data, const std::string& dataset_name, const BenchConfig& cfg) {
    if (cfg.trials < 1) throw ConfigError("need at least one trial");
    if (cfg.algorithms.empty()) throw ConfigError("need at least one algorithm");

    RunConfig base;
    base.clusters = cfg.clusters;
    base.fuzzifier = cfg.fuzzifier;
    base.epsilon = cfg.epsilon;
    base.max_iter = cfg.max_iter;
    base.init = cfg.init;
    base.threads = cfg.kernel_threads;
    base.seed = cfg.seed;
    base.validate();

    const auto algos = cfg.algorithms.size();
    const auto trials = static_cast<std::size_t>(cfg.trials);
    std::vector<std::vector<TrialRecord>> results(algos, std::vector<TrialRecord>(trials));

    auto run_trial = [&](std::size_t k) {
        RunConfig rc = base;
        rc.seed = trial_seed(cfg.seed, static_cast<int>(k));
        const auto init = initialize_centers(data, rc);
        for (std::size_t a = 0; a < algos; ++a) {
            rc.algorithm = cfg.algorithms[a];
            auto trace = run(data, rc, init);
            attach_metrics(trace, data);
            TrialRecord& rec = results[a][k];
            rec.trial = static_cast<int>(k);
            rec.seed = rc.seed;
            rec.iterations = trace.iterations;
            rec.converged = trace.converged;
            rec.nanos = trace.total_nanos();
            rec.j_fuzzy = trace.records.back().fuzzy_objective;
            rec.j_hard = trace.records.back().hard_objective;
            rec.metrics = *trace.metrics;
            rec.initial_centers = init.centers();
        }
    };

    const int workers = std::max(1, std::min(cfg.trial_threads, cfg.trials));
    if (workers == 1) {
        for (std::size_t k = 0; k < trials; ++k) run_trial(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_lock;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < trials; k = next++) {
                    try {
                        run_trial(k);
                    } catch (...) {
                        std::lock_guard lock(failure_lock);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    BenchReport report;
    report.dataset = dataset_name;
    report.clusters = cfg.clusters;
    report.trials = cfg.trials;
    for (std::size_t a = 0; a < algos; ++a) {
        AlgorithmSummary s;
        s.algorithm = cfg.algorithms[a];
        s.trials = std::move(results[a]);
        summarize(s);
        report.algorithms.push_back(std::move(s));
    }
    return report;
}

json bench_to_json(const BenchReport& report) {
    json algos = json::array();
    for (const auto& s : report.algorithms) {
        json per = json::array();
        for (const auto& t : s.trials) per.push_back(trial_to_json(t));
        algos.push_back({{"name", std::string(to_string(s.algorithm))},
                         {"perTrial", std::move(per)},
                         {"mean", s.mean},
                         {"std", s.std}});
    }
    return {{"schema", kSchemaVersion},
            {"dataset", report.dataset},
            {"c", report.clusters},
            {"trials", report.trials},
            {"algorithms", std::move(algos)}};
}

BenchReport bench_from_json(const json& j) {
    try {
        if (j.at("schema").get<int>() != kSchemaVersion) throw ConfigError("unsupported report schema");
        BenchReport r;
        r.dataset = j.at("dataset").get<std::string>();
        r.clusters = j.at("c").get<int>();
        r.trials = j.at("trials").get<int>();
        for (const auto& a : j.at("algorithms")) {
            AlgorithmSummary s;
            s.algorithm = parse_algorithm(a.at("name").get<std::string>());
            for (const auto& t : a.at("perTrial")) s.trials.push_back(trial_from_json(t));
            s.mean = a.at("mean").get<std::map<std::string, double>>();
            s.std = a.at("std").get<std::map<std::string, double>>();
            r.algorithms.push_back(std::move(s));
        }
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed bench report: ") + e.what());
    }
}

json compare_reports(const std::vector<BenchReport>& reports, const std::string& metric, double alpha) {
    if (reports.size() < 2) throw ConfigError("need at least two reports (datasets) to compare");
    const bool higher = higher_is_better(metric);
    const auto& names = reports.front().algorithms;
    if (names.size() < 2) throw ConfigError("need at least two algorithms to compare");

    const auto n = static_cast<Index>(reports.size());
    const auto k = static_cast<Index>(names.size());
    Eigen::MatrixXd scores(n, k);
    std::vector<std::string> datasets;
    for (Index i = 0; i < n; ++i) {
        const auto& rep = reports[static_cast<std::size_t>(i)];
        datasets.push_back(rep.dataset);
        if (static_cast<Index>(rep.algorithms.size()) != k) throw ConfigError("reports compare different algorithm sets");
        for (Index a = 0; a < k; ++a) {
            const auto& s = rep.find(names[static_cast<std::size_t>(a)].algorithm);
            const auto it = s.mean.find(metric == "time" ? "nanos" : metric);
            if (it == s.mean.end()) {
                throw ConfigError("report '" + rep.dataset + "' has no '" + metric + "' values");
            }
            scores(i, a) = it->second;
        }
    }

    const auto fr = friedman_test(scores, higher, alpha);
    const double cd = nemenyi_cd(static_cast<int>(k), static_cast<int>(n), alpha);

    json algos = json::array();
    for (const auto& s : names) algos.push_back(std::string(to_string(s.algorithm)));
    json ranks = json::array();
    for (Index i = 0; i < n; ++i) {
        json row = json::array();
        for (Index a = 0; a < k; ++a) row.push_back(fr.ranks(i, a));
        ranks.push_back(std::move(row));
    }
    json mean_ranks = json::array();
    for (Index a = 0; a < k; ++a) mean_ranks.push_back(fr.mean_ranks(a));

    return {{"schema", kSchemaVersion},
            {"metric", metric},
            {"higherIsBetter", higher},
            {"alpha", alpha},
            {"algorithms", std::move(algos)},
            {"datasets", datasets},
            {"ranks", std::move(ranks)},
            {"meanRanks", std::move(mean_ranks)},
            {"friedman",
             {{"statistic", fr.statistic},
              {"df", k - 1},
              {"pValue", fr.p_value},
              {"imanDavenport", std::isfinite(fr.iman_davenport) ? json(fr.iman_davenport) : json(nullptr)},
              {"imanDavenportP", fr.iman_davenport_p},
              {"significant", fr.significant}}},
            {"cd", cd}};
}

}  // namespace affcm
