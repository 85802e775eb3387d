#include "affcm/bench.hpp"
#include "affcm/datagen.hpp"
#include "affcm/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace affcm;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("affcm_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + AFFCM_CLI_PATH + "\" " + args + " >\"" +
                            (workdir() / "stdout.txt").string() + "\" 2>\"" + (workdir() / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("cli gen") {
    REQUIRE(cli("gen --preset d1 --seed 7 --out " + path("d1.csv")) == 0);
    const auto d = read_csv_file(path("d1.csv"));
    CHECK(d.size() == 600);
    CHECK(d.samples() == preset_d1(7).samples());

    CHECK(cli("gen --preset d1 --seed 7") != 0);
    CHECK(cli("gen --preset d3 --out " + path("x.csv")) != 0);

    std::ofstream(path("bad.json")) << R"({"components": [{"mean": [0, 0], "covariance": -1, "count": 5}]})";
    CHECK(cli("gen --spec " + path("bad.json") + " --out " + path("bad.csv")) == 1);
    CHECK_FALSE(fs::exists(path("bad.csv")));

    std::ofstream(path("good.json")) << R"({"seed": 3, "components": [{"mean": [0, 0], "covariance": 1, "count": 5},
                                                                    {"mean": [9, 9], "covariance": [1, 2], "count": 4}]})";
    REQUIRE(cli("gen --spec " + path("good.json") + " --out " + path("good.csv")) == 0);
    CHECK(read_csv_file(path("good.csv")).size() == 9);
}

TEST_CASE("cli run") {
    REQUIRE(cli("gen --preset d1 --seed 7 --out " + path("d1.csv")) == 0);
    REQUIRE(cli("run --algo amfcm --data " + path("d1.csv") + " --c 3 --seed 1 --trace " + path("amfcm.json")) == 0);
    const auto trace = trace_from_json(read_json_file(path("amfcm.json")));
    CHECK(trace.converged);
    CHECK(trace.iterations <= trace.config.max_iter);
    REQUIRE(trace.metrics);
    CHECK(trace.metrics->ari.has_value());

    const auto comps = d1_components();
    for (const auto& comp : comps) {
        bool found = false;
        for (Index i = 0; i < 3; ++i) {
            found |= (trace.centers.row(i).transpose() - comp.mean).cwiseAbs().maxCoeff() <= 0.5;
        }
        CHECK(found);
    }

    REQUIRE(cli("run --algo fcm --data " + path("d1.csv") + " --c 3 --seed 1 --trace " + path("fcm.json")) == 0);
    CHECK(trace.iterations <= trace_from_json(read_json_file(path("fcm.json"))).iterations);

    CHECK(cli("run --algo bogus --data " + path("d1.csv") + " --c 3") != 0);
    CHECK(cli("run --data " + path("d1.csv") + " --c 601") == 1);
    CHECK(cli("run --data " + path("missing.csv") + " --c 3") == 1);
    std::ofstream(path("text.csv")) << "a,b\n1,2\n3,x\n";
    CHECK(cli("run --data " + path("text.csv") + " --c 2") == 1);
    CHECK(cli("run --data " + path("d1.csv") + " --c 3 --m 1") == 1);

    CHECK(cli("run --data " + path("d1.csv") + " --c 3 --max-iter 1") == 2);
    CHECK(cli("run --data " + path("d1.csv") + " --c 3 --max-iter 1 --allow-maxiter") == 0);
}

TEST_CASE("cli run is byte-reproducible") {
    REQUIRE(cli("gen --preset d2 --seed 5 --out " + path("d2.csv")) == 0);
    REQUIRE(cli("run --data " + path("d2.csv") + " --c 3 --seed 9 --threads 1 --trace " + path("a.json")) == 0);
    REQUIRE(cli("run --data " + path("d2.csv") + " --c 3 --seed 9 --threads 1 --trace " + path("b.json")) == 0);
    CHECK(slurp(path("a.json")) == slurp(path("b.json")));
    REQUIRE(cli("run --data " + path("d2.csv") + " --c 3 --seed 9 --threads 4 --trace " + path("c.json")) == 0);
    CHECK(slurp(path("a.json")) == slurp(path("c.json")));
}

TEST_CASE("cli bench and stats") {
    REQUIRE(cli("gen --preset d1 --seed 7 --out " + path("d1.csv")) == 0);
    REQUIRE(cli("gen --preset d2 --seed 7 --out " + path("d2.csv")) == 0);
    REQUIRE(cli("bench --data " + path("d1.csv") + " --c 3 --trials 10 --report " + path("r1.json")) == 0);
    REQUIRE(cli("bench --data " + path("d2.csv") + " --c 3 --trials 10 --report " + path("r2.json")) == 0);
    const auto r1 = read_json_file(path("r1.json"));
    REQUIRE(r1["algorithms"].size() == 3);
    for (const auto& a : r1["algorithms"]) CHECK(a["perTrial"].size() == 10);

    const auto r2 = bench_from_json(read_json_file(path("r2.json")));
    CHECK(r2.find(Algorithm::amfcm).mean.at("iterations") <= r2.find(Algorithm::msfcm).mean.at("iterations"));
    CHECK(r2.find(Algorithm::msfcm).mean.at("iterations") <= r2.find(Algorithm::fcm).mean.at("iterations"));

    REQUIRE(cli("stats --reports " + path("r1.json") + " " + path("r2.json") + " --metric iterations --alpha 0.05 --out " +
                path("stats.json")) == 0);
    const auto s = read_json_file(path("stats.json"));
    CHECK(s["meanRanks"].size() == 3);
    CHECK(s.contains("cd"));
    CHECK(s["friedman"].contains("statistic"));

    CHECK(cli("stats --reports " + path("r1.json") + " --metric iterations") != 0);
    CHECK(cli("bench --data " + path("d1.csv") + " --c 3 --algos fcm --trials 2 --report " + path("one.json")) == 0);
    CHECK(cli("stats --reports " + path("one.json") + " " + path("one.json")) != 0);
}

