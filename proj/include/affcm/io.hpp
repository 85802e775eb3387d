#ifndef AFFCM_IO_HPP
#define AFFCM_IO_HPP

#include "affcm/core.hpp"
#include "affcm/datagen.hpp"
#include "affcm/engine.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>

namespace affcm {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class HeaderMode { auto_detect, present, absent };

/**
 * Reads one sample per row of comma-separated numeric features.
 *
 * With a header, a final column named `label` holds integer class ids (-1 for
 * noise) and a first column named `id` holds row identifiers. In auto-detect
 * mode the first row is a header when any of its cells is not a number.
 */
Dataset<double> read_csv(std::istream& in, HeaderMode mode = HeaderMode::auto_detect);
Dataset<double> read_csv_file(const std::filesystem::path& path, HeaderMode mode = HeaderMode::auto_detect);

/// Writes a header `x0,...,x{p-1}[,label]` and shortest round-trip decimal values.
void write_csv(std::ostream& out, const Dataset<double>& data);
void write_csv_file(const std::filesystem::path& path, const Dataset<double>& data);

struct MixtureSpec {
    std::vector<MixtureComponent> components;
    std::optional<std::uint64_t> seed;
};

/**
 * {"seed": 7, "components": [{"mean": [..], "covariance": .., "count": 200}, ...]}
 *
 * `covariance` is a positive number (isotropic), a list of variances, or a
 * square matrix that must be diagonal. `variances` is accepted as an alias for
 * the list form.
 */
MixtureSpec mixture_spec_from_json(const json& j);

json trace_to_json(const RunTrace<double>& trace);
RunTrace<double> trace_from_json(const json& j);

json validity_to_json(const ValidityReport& r);
ValidityReport validity_from_json(const json& j);

/// Reads and parses a JSON file, wrapping parse failures in ConfigError.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace affcm

#endif
