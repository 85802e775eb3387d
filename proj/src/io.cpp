#include "affcm/io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace affcm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

Dataset<double> read_csv(std::istream& in, HeaderMode mode) {
    std::vector<std::string> lines;
    std::vector<std::size_t> line_numbers;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        lines.push_back(line);
        line_numbers.push_back(no);
    }
    if (lines.empty()) throw ConfigError("CSV input is empty");

    bool has_header = mode == HeaderMode::present;
    if (mode == HeaderMode::auto_detect) {
        for (auto cell : split(lines.front())) {
            if (!parse_double(cell)) {
                has_header = true;
                break;
            }
        }
    }

    bool label_col = false;
    bool id_col = false;
    std::size_t width = split(lines.front()).size();
    if (has_header) {
        const auto header = split(lines.front());
        label_col = iequals(header.back(), "label");
        id_col = header.size() > 1 && iequals(header.front(), "id");
    }
    const std::size_t first = has_header ? 1 : 0;
    const std::size_t skip_front = id_col ? 1 : 0;
    const std::size_t skip_back = label_col ? 1 : 0;
    if (width <= skip_front + skip_back) throw ConfigError("CSV has no feature columns");
    const auto p = static_cast<Index>(width - skip_front - skip_back);
    const auto n = static_cast<Index>(lines.size() - first);
    if (n < 1) throw ConfigError("CSV has a header but no samples");

    Matrix<double> samples(n, p);
    IndexVector labels(label_col ? n : 0);
    std::vector<std::string> ids;
    for (Index r = 0; r < n; ++r) {
        const auto k = static_cast<std::size_t>(r) + first;
        const auto cells = split(lines[k]);
        const std::string where = "CSV line " + std::to_string(line_numbers[k]);
        if (cells.size() != width) {
            throw ConfigError(where + ": expected " + std::to_string(width) + " cells, found " +
                              std::to_string(cells.size()));
        }
        if (id_col) ids.emplace_back(cells.front());
        for (Index d = 0; d < p; ++d) {
            const auto cell = cells[skip_front + static_cast<std::size_t>(d)];
            const auto v = parse_double(cell);
            if (!v || !std::isfinite(*v)) throw ConfigError(where + ": non-numeric cell '" + std::string(cell) + "'");
            samples(r, d) = *v;
        }
        if (label_col) {
            const auto v = parse_int(cells.back());
            if (!v) throw ConfigError(where + ": label '" + std::string(cells.back()) + "' is not an integer");
            labels(r) = *v;
        }
    }
    std::optional<IndexVector> lab;
    if (label_col) lab = std::move(labels);
    std::optional<std::vector<std::string>> id;
    if (id_col) id = std::move(ids);
    try {
        return Dataset<double>(std::move(samples), std::move(lab), std::move(id));
    } catch (const InvariantError& e) {
        throw ConfigError(std::string("invalid CSV dataset: ") + e.what());
    }
}

Dataset<double> read_csv_file(const std::filesystem::path& path, HeaderMode mode) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    return read_csv(in, mode);
}

void write_csv(std::ostream& out, const Dataset<double>& data) {
    const bool ids = data.ids().has_value();
    if (ids) out << "id,";
    for (Index d = 0; d < data.dim(); ++d) out << (d ? "," : "") << 'x' << d;
    if (data.labels()) out << ",label";
    out << '\n';
    for (Index r = 0; r < data.size(); ++r) {
        if (ids) out << (*data.ids())[static_cast<std::size_t>(r)] << ',';
        for (Index d = 0; d < data.dim(); ++d) out << (d ? "," : "") << format_double(data.samples()(r, d));
        if (data.labels()) out << ',' << (*data.labels())(r);
        out << '\n';
    }
}

void write_csv_file(const std::filesystem::path& path, const Dataset<double>& data) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    write_csv(out, data);
}

MixtureSpec mixture_spec_from_json(const json& j) {
    MixtureSpec spec;
    try {
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        const auto& comps = j.at("components");
        if (!comps.is_array() || comps.empty()) throw ConfigError("'components' must be a non-empty array");
        for (const auto& c : comps) {
            MixtureComponent comp;
            const auto mean = c.at("mean").get<std::vector<double>>();
            comp.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Index>(mean.size()));
            const auto p = comp.mean.size();
            const json& cov = c.contains("covariance") ? c.at("covariance") : c.at("variances");
            if (cov.is_number()) {
                comp.variances = Eigen::VectorXd::Constant(p, cov.get<double>());
            } else if (cov.is_array() && !cov.empty() && cov.front().is_array()) {
                const auto rows = cov.get<std::vector<std::vector<double>>>();
                if (static_cast<Index>(rows.size()) != p) throw ConfigError("covariance must be p x p");
                comp.variances.resize(p);
                for (Index a = 0; a < p; ++a) {
                    const auto& row = rows[static_cast<std::size_t>(a)];
                    if (static_cast<Index>(row.size()) != p) throw ConfigError("covariance must be p x p");
                    for (Index b = 0; b < p; ++b) {
                        if (a != b && row[static_cast<std::size_t>(b)] != 0.0) {
                            throw ConfigError("only diagonal covariances are supported");
                        }
                    }
                    comp.variances(a) = row[static_cast<std::size_t>(a)];
                }
            } else {
                const auto v = cov.get<std::vector<double>>();
                comp.variances = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
            }
            if (comp.variances.size() != p) throw ConfigError("variance count does not match mean dimension");
            if ((comp.variances.array() <= 0.0).any()) throw ConfigError("variances must be positive");
            const auto count = c.at("count").get<std::int64_t>();
            if (count < 0) throw ConfigError("component counts must be non-negative");
            comp.count = static_cast<Index>(count);
            spec.components.push_back(std::move(comp));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid mixture spec: ") + e.what());
    }
    return spec;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

}  // namespace affcm
