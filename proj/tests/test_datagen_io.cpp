#include "affcm/datagen.hpp"
#include "affcm/engine.hpp"
#include "affcm/io.hpp"
#include "support/random_suite.hpp"

#include <doctest.h>

#include <sstream>

using namespace affcm;

namespace {

std::string csv_of(const Dataset<double>& d) {
    std::ostringstream out;
    write_csv(out, d);
    return out.str();
}

}  // namespace

TEST_CASE("datagen: D1 shape and labels") {
    const auto d = preset_d1(7);
    CHECK(d.size() == 600);
    CHECK(d.dim() == 2);
    REQUIRE(d.labels());
    CHECK(d.class_count() == 3);
    for (Index j = 0; j < 600; ++j) CHECK((*d.labels())(j) == static_cast<int>(j / 200));
}

TEST_CASE("datagen: component means agree with the requested means at large counts") {
    std::vector<MixtureComponent> comps = d1_components();
    for (auto& c : comps) c.count = 10000;
    const auto d = generate_gaussian_mixture(comps, 3);
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const auto block = d.samples().middleRows(static_cast<Index>(k) * 10000, 10000);
        const Eigen::RowVectorXd mean = block.colwise().mean();
        for (Index p = 0; p < 2; ++p) {
            const double sigma = std::sqrt(comps[k].variances(p));
            CHECK(std::abs(mean(p) - comps[k].mean(p)) <= 3 * sigma / std::sqrt(10000.0));
        }
    }
}

TEST_CASE("datagen: empty components and bad variances") {
    std::vector<MixtureComponent> comps = d1_components();
    comps[1].count = 0;
    const auto d = generate_gaussian_mixture(comps, 1);
    CHECK(d.size() == 400);
    CHECK((*d.labels())(250) == 2);

    comps[0].variances(1) = -0.5;
    CHECK_THROWS_AS(generate_gaussian_mixture(comps, 1), ConfigError);
}

TEST_CASE("datagen: D2 extends D1 with labelled noise") {
    const auto d1 = preset_d1(11);
    const auto d2 = preset_d2(11);
    CHECK(d2.size() == 660);
    CHECK(d2.samples().topRows(600) == d1.samples());
    const auto labels = *d2.labels();
    CHECK((labels.tail(60).array() == kNoiseLabel).all());
    CHECK((labels.head(600).array() >= 0).all());
    const auto noise = d2.samples().bottomRows(60);
    CHECK((noise.col(0).array() >= 10).all());
    CHECK((noise.col(0).array() <= 13).all());
    CHECK((noise.col(1).array() >= 4).all());
    CHECK((noise.col(1).array() <= 10).all());
    CHECK(csv_of(preset_d2(11)) == csv_of(d2));
    CHECK(csv_of(preset_d2(12)) != csv_of(d2));
}

TEST_CASE("csv: round trip and header handling") {
    const auto d = preset_d2(5);
    std::istringstream in(csv_of(d));
    const auto back = read_csv(in);
    CHECK(back.samples() == d.samples());
    REQUIRE(back.labels());
    CHECK(*back.labels() == *d.labels());

    std::istringstream bare("1,2\n3,4\n5,6\n");
    const auto b = read_csv(bare);
    CHECK(b.size() == 3);
    CHECK_FALSE(b.labels());

    std::istringstream with_id("id,a,b,label\n7,1.5,2,0\n8,3,4,1\n");
    const auto w = read_csv(with_id);
    CHECK(w.dim() == 2);
    CHECK(w.samples()(0, 0) == 1.5);
    CHECK((*w.labels())(1) == 1);

    std::istringstream headerless("1,2\n3,4\n");
    CHECK(read_csv(headerless, HeaderMode::present).size() == 1);
}

TEST_CASE("csv: malformed input is rejected") {
    std::istringstream bad("x0,x1\n1,2\n3,abc\n");
    CHECK_THROWS_AS(read_csv(bad), ConfigError);
    std::istringstream ragged("1,2\n3\n");
    CHECK_THROWS_AS(read_csv(ragged), ConfigError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), ConfigError);
    CHECK_THROWS_AS(read_csv_file("/nonexistent/file.csv"), ConfigError);
}

TEST_CASE("mixture spec JSON") {
    const auto spec = mixture_spec_from_json(json::parse(R"({
        "seed": 4,
        "components": [
            {"mean": [0, 0], "covariance": 0.5, "count": 3},
            {"mean": [1, 2], "covariance": [0.1, 0.2], "count": 2},
            {"mean": [5, 5], "covariance": [[1, 0], [0, 2]], "count": 1},
            {"mean": [9, 9], "variances": [1, 1], "count": 0}
        ]})"));
    REQUIRE(spec.components.size() == 4);
    CHECK(spec.seed == 4u);
    CHECK(spec.components[0].variances(1) == 0.5);
    CHECK(spec.components[2].variances(1) == 2.0);
    CHECK_THROWS_AS(mixture_spec_from_json(json::parse(R"({"components": [{"mean": [0, 0], "covariance": [[1, 0.5], [0.5, 1]], "count": 1}]})")),
                    ConfigError);
    CHECK_THROWS_AS(mixture_spec_from_json(json::parse(R"({"components": [{"mean": [0], "covariance": -1, "count": 1}]})")),
                    ConfigError);
}

TEST_CASE("trace JSON round trip") {
    const auto inst = suite::make_instance(9);
    for (auto algo : {Algorithm::fcm, Algorithm::msfcm, Algorithm::amfcm}) {
        RunConfig cfg;
        cfg.clusters = inst.clusters;
        cfg.algorithm = algo;
        cfg.seed = 123456789012345ULL;
        auto trace = run(inst.data, cfg);
        attach_metrics(trace, inst.data);
        const auto j = trace_to_json(trace);
        CHECK(j["schema"] == kSchemaVersion);
        const auto back = trace_from_json(json::parse(j.dump()));
        CHECK(back.algorithm == trace.algorithm);
        CHECK(back.config.seed == trace.config.seed);
        CHECK(back.config.fuzzifier == trace.config.fuzzifier);
        CHECK(back.iterations == trace.iterations);
        CHECK(back.converged == trace.converged);
        CHECK(back.records == trace.records);
        CHECK(back.centers == trace.centers);
        CHECK(back.memberships == trace.memberships);
        CHECK(back.stage_b_start == trace.stage_b_start);
        CHECK(back.metrics == trace.metrics);
        CHECK(trace_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("validity JSON keeps degenerate indices as null") {
    ValidityReport r;
    r.pc = 0.5;
    const auto j = validity_to_json(r);
    CHECK(j["dbi"].is_null());
    CHECK_FALSE(j.contains("ari"));
    CHECK(validity_from_json(j) == r);
}
