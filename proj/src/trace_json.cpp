#include "affcm/io.hpp"

namespace affcm {

namespace {

json matrix_to_json(const Matrix<double>& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix<double> matrix_from_json(const json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) return Matrix<double>();
    Matrix<double> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index r = 0; r < m.rows(); ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (static_cast<Index>(row.size()) != m.cols()) throw ConfigError("ragged matrix in JSON");
        for (Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

json validity_to_json(const ValidityReport& r) {
    json j{{"pc", r.pc}, {"dbi", optional_number(r.dbi)}, {"xb", optional_number(r.xb)}};
    if (r.f_star) j["fStar"] = *r.f_star;
    if (r.ari) j["ari"] = *r.ari;
    if (r.nmi) j["nmi"] = *r.nmi;
    return j;
}

ValidityReport validity_from_json(const json& j) {
    ValidityReport r;
    r.pc = j.at("pc").get<double>();
    r.dbi = number_or_null(j, "dbi");
    r.xb = number_or_null(j, "xb");
    r.f_star = number_or_null(j, "fStar");
    r.ari = number_or_null(j, "ari");
    r.nmi = number_or_null(j, "nmi");
    return r;
}

json trace_to_json(const RunTrace<double>& trace) {
    json records = json::array();
    for (const auto& r : trace.records) {
        records.push_back({{"t", r.t},
                           {"jFuzzy", r.fuzzy_objective},
                           {"jHard", r.hard_objective},
                           {"drift", r.drift},
                           {"filteredSamples", r.filtered_samples},
                           {"filteredCenterPairs", r.filtered_pairs},
                           {"nanos", r.nanos}});
    }
    json rate = json::array();
    for (const auto& [t, v] : trace.filter_rate()) rate.push_back(json::array({t, v}));

    const auto& cfg = trace.config;
    json j{{"schema", kSchemaVersion},
           {"algorithm", std::string(to_string(trace.algorithm))},
           {"config",
            {{"c", cfg.clusters},
             {"m", cfg.fuzzifier},
             {"eps", cfg.epsilon},
             {"maxIter", cfg.max_iter},
             {"seed", cfg.seed},
             {"init", std::string(to_string(cfg.init))}}},
           {"iterations", trace.iterations},
           {"converged", trace.converged},
           {"stageBStart", trace.stage_b_start ? json(*trace.stage_b_start) : json(nullptr)},
           {"perIteration", std::move(records)},
           {"filterRate", std::move(rate)},
           {"centers", matrix_to_json(trace.centers)},
           {"memberships", matrix_to_json(trace.memberships)}};
    j["metrics"] = trace.metrics ? validity_to_json(*trace.metrics) : json(nullptr);
    return j;
}

RunTrace<double> trace_from_json(const json& j) {
    try {
        if (j.at("schema").get<int>() != kSchemaVersion) throw ConfigError("unsupported trace schema");
        RunTrace<double> t;
        t.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        const auto& cfg = j.at("config");
        t.config.clusters = cfg.at("c").get<int>();
        t.config.fuzzifier = cfg.at("m").get<double>();
        t.config.epsilon = cfg.at("eps").get<double>();
        t.config.max_iter = cfg.at("maxIter").get<int>();
        t.config.seed = cfg.at("seed").get<std::uint64_t>();
        t.config.init = parse_init_method(cfg.at("init").get<std::string>());
        t.config.algorithm = t.algorithm;
        t.iterations = j.at("iterations").get<int>();
        t.converged = j.at("converged").get<bool>();
        if (!j.at("stageBStart").is_null()) t.stage_b_start = j.at("stageBStart").get<int>();
        for (const auto& r : j.at("perIteration")) {
            IterationRecord rec;
            rec.t = r.at("t").get<int>();
            rec.fuzzy_objective = r.at("jFuzzy").get<double>();
            rec.hard_objective = r.at("jHard").get<double>();
            rec.drift = r.at("drift").get<double>();
            rec.filtered_samples = r.at("filteredSamples").get<Index>();
            rec.filtered_pairs = r.at("filteredCenterPairs").get<Index>();
            rec.nanos = r.at("nanos").get<std::int64_t>();
            t.records.push_back(rec);
        }
        t.centers = matrix_from_json(j.at("centers"));
        t.memberships = matrix_from_json(j.at("memberships"));
        if (j.contains("metrics") && !j.at("metrics").is_null()) t.metrics = validity_from_json(j.at("metrics"));
        return t;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed trace JSON: ") + e.what());
    }
}

}  // namespace affcm
