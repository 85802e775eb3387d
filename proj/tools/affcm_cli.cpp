// affcm: data generation, single runs, multi-trial benchmarks and rank statistics.

#include "affcm/bench.hpp"
#include "affcm/datagen.hpp"
#include "affcm/engine.hpp"
#include "affcm/io.hpp"
#include "affcm/parallel.hpp"
#include "affcm/stats.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace affcm;

HeaderMode header_mode(bool header, bool no_header) {
    if (header) return HeaderMode::present;
    if (no_header) return HeaderMode::absent;
    return HeaderMode::auto_detect;
}

std::vector<Algorithm> parse_algorithm_list(const std::string& s) {
    std::vector<Algorithm> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(parse_algorithm(item));
    }
    if (out.empty()) throw ConfigError("--algos needs at least one algorithm");
    return out;
}

struct GenArgs {
    std::string preset;
    std::string spec;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    Dataset<double> data;
    if (!a.spec.empty()) {
        const auto spec = mixture_spec_from_json(read_json_file(a.spec));
        const std::uint64_t seed = a.seed_given ? a.seed : spec.seed.value_or(0);
        data = generate_gaussian_mixture(spec.components, seed);
    } else if (a.preset == "d1") {
        data = preset_d1(a.seed);
    } else if (a.preset == "d2") {
        data = preset_d2(a.seed);
    } else {
        throw ConfigError("gen needs --preset d1|d2 or --spec FILE.json");
    }
    write_csv_file(a.out, data);
    std::cout << "wrote " << data.size() << " samples x " << data.dim() << " features to " << a.out << '\n';
    return 0;
}

struct RunArgs {
    std::string algo = "amfcm";
    std::string data;
    int c = 0;
    double m = 2.0;
    double eps = 1e-6;
    int max_iter = 1000;
    std::uint64_t seed = 0;
    std::string init = "distinct-sample-draw";
    std::string trace;
    bool header = false;
    bool no_header = false;
    bool timing = false;
    bool allow_maxiter = false;
    int threads = 0;
};

int cmd_run(const RunArgs& a) {
    const auto data = read_csv_file(a.data, header_mode(a.header, a.no_header));
    RunConfig cfg;
    cfg.algorithm = parse_algorithm(a.algo);
    cfg.clusters = a.c;
    cfg.fuzzifier = a.m;
    cfg.epsilon = a.eps;
    cfg.max_iter = a.max_iter;
    cfg.seed = a.seed;
    cfg.init = parse_init_method(a.init);
    cfg.threads = a.threads > 0 ? a.threads : default_thread_count();

    EngineOptions<double> options;
    options.record_timing = a.timing;
    auto trace = run(data, cfg, std::nullopt, options);
    attach_metrics(trace, data);

    if (!a.trace.empty()) write_json_file(a.trace, trace_to_json(trace));
    std::cout << to_string(cfg.algorithm) << ": " << trace.iterations << " iterations, "
              << (trace.converged ? "converged" : "did not converge") << ", J_Fuzzy "
              << trace.records.back().fuzzy_objective << ", J_Hard " << trace.records.back().hard_objective << '\n';
    return trace.converged || a.allow_maxiter ? 0 : 2;
}

struct BenchArgs {
    std::string data;
    int c = 0;
    std::string algos = "fcm,msfcm,amfcm";
    int trials = 10;
    std::uint64_t seed = 0;
    double m = 2.0;
    double eps = 1e-6;
    int max_iter = 1000;
    std::string init = "distinct-sample-draw";
    std::string report;
    bool header = false;
    bool no_header = false;
    bool allow_maxiter = false;
    int threads = 0;
};

int cmd_bench(const BenchArgs& a) {
    const auto data = read_csv_file(a.data, header_mode(a.header, a.no_header));
    BenchConfig cfg;
    cfg.clusters = a.c;
    cfg.algorithms = parse_algorithm_list(a.algos);
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.fuzzifier = a.m;
    cfg.epsilon = a.eps;
    cfg.max_iter = a.max_iter;
    cfg.init = parse_init_method(a.init);
    cfg.trial_threads = a.threads > 0 ? a.threads : default_thread_count();
    cfg.kernel_threads = 1;

    const auto report = run_bench(data, std::filesystem::path(a.data).stem().string(), cfg);
    write_json_file(a.report, bench_to_json(report));

    bool all_converged = true;
    for (const auto& s : report.algorithms) {
        int converged = 0;
        for (const auto& t : s.trials) converged += t.converged ? 1 : 0;
        all_converged = all_converged && converged == report.trials;
        std::cout << to_string(s.algorithm) << ": iterations " << s.mean.at("iterations") << " +- "
                  << s.std.at("iterations") << ", converged " << converged << "/" << report.trials << '\n';
    }
    return all_converged || a.allow_maxiter ? 0 : 2;
}

struct StatsArgs {
    std::vector<std::string> reports;
    std::string metric = "iterations";
    double alpha = 0.05;
    std::string out;
};

int cmd_stats(const StatsArgs& a) {
    if (a.reports.size() < 2) throw ConfigError("stats needs at least two --reports");
    std::vector<BenchReport> reports;
    for (const auto& path : a.reports) reports.push_back(bench_from_json(read_json_file(path)));
    const auto result = compare_reports(reports, a.metric, a.alpha);
    if (a.out.empty()) {
        std::cout << result.dump(2) << '\n';
    } else {
        write_json_file(a.out, result);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy c-means with affinity filtering: generate data, run, benchmark, compare"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset as CSV");
    auto* preset_opt = gen_cmd->add_option("--preset", gen.preset, "Built-in dataset")->check(CLI::IsMember({"d1", "d2"}));
    auto* spec_opt = gen_cmd->add_option("--spec", gen.spec, "Mixture spec JSON")->check(CLI::ExistingFile);
    preset_opt->excludes(spec_opt);
    gen_cmd->add_option("--seed", gen.seed, "Random seed")->each([&](const std::string&) { gen.seed_given = true; });
    gen_cmd->add_option("--out", gen.out, "Output CSV")->required();

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Cluster one dataset and write the run trace");
    run_cmd->add_option("--algo", run_args.algo, "fcm, msfcm or amfcm")
        ->check(CLI::IsMember({"fcm", "msfcm", "amfcm"}));
    run_cmd->add_option("--data", run_args.data, "Input CSV")->required();
    run_cmd->add_option("--c", run_args.c, "Number of clusters")->required();
    run_cmd->add_option("--m", run_args.m, "Fuzzifier (> 1)");
    run_cmd->add_option("--eps", run_args.eps, "Stop when the Frobenius center drift drops below this");
    run_cmd->add_option("--max-iter", run_args.max_iter, "Iteration cap");
    run_cmd->add_option("--seed", run_args.seed, "Initialization seed");
    run_cmd->add_option("--init", run_args.init, "distinct-sample-draw or random-membership");
    run_cmd->add_option("--trace", run_args.trace, "Write the run trace JSON here");
    run_cmd->add_flag("--header", run_args.header, "CSV has a header row");
    run_cmd->add_flag("--no-header", run_args.no_header, "CSV has no header row");
    run_cmd->add_flag("--timing", run_args.timing, "Record per-iteration wall time in the trace");
    run_cmd->add_flag("--allow-maxiter", run_args.allow_maxiter, "Exit 0 even if the run hits the iteration cap");
    run_cmd->add_option("--threads", run_args.threads, "Worker threads (default: AFFCM_THREADS or all cores)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run several algorithms over shared random initializations");
    bench_cmd->add_option("--data", bench.data, "Input CSV")->required();
    bench_cmd->add_option("--c", bench.c, "Number of clusters")->required();
    bench_cmd->add_option("--algos", bench.algos, "Comma-separated algorithms");
    bench_cmd->add_option("--trials", bench.trials, "Number of trials");
    bench_cmd->add_option("--seed", bench.seed, "Base seed; trial k uses seed + k");
    bench_cmd->add_option("--m", bench.m, "Fuzzifier (> 1)");
    bench_cmd->add_option("--eps", bench.eps, "Convergence threshold");
    bench_cmd->add_option("--max-iter", bench.max_iter, "Iteration cap");
    bench_cmd->add_option("--init", bench.init, "distinct-sample-draw or random-membership");
    bench_cmd->add_option("--report", bench.report, "Output report JSON")->required();
    bench_cmd->add_flag("--header", bench.header, "CSV has a header row");
    bench_cmd->add_flag("--no-header", bench.no_header, "CSV has no header row");
    bench_cmd->add_flag("--allow-maxiter", bench.allow_maxiter, "Exit 0 even if some run hits the iteration cap");
    bench_cmd->add_option("--threads", bench.threads, "Concurrent trials (default: AFFCM_THREADS or all cores)");

    StatsArgs stats;
    auto* stats_cmd = app.add_subcommand("stats", "Friedman test and Nemenyi CD across bench reports");
    stats_cmd->add_option("--reports", stats.reports, "Bench report JSON files, one per dataset")->required();
    stats_cmd->add_option("--metric", stats.metric, "Metric to rank on");
    stats_cmd->add_option("--alpha", stats.alpha, "Significance level (0.05 or 0.10)");
    stats_cmd->add_option("--out", stats.out, "Write JSON here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*run_cmd) return cmd_run(run_args);
        if (*bench_cmd) return cmd_bench(bench);
        if (*stats_cmd) return cmd_stats(stats);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
