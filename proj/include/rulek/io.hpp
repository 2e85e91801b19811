#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rulek/experiments.hpp"
#include "rulek/graph.hpp"
#include "rulek/oracle.hpp"
#include "rulek/rules.hpp"

namespace rulek {

using Json = nlohmann::ordered_json;

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact CSV header of the per-trial results file.
inline constexpr const char* kResultsCsvHeader =
    "n,ell,k,trial,seed,c_k,u_k,m_marked,c_k_restricted,l_count,grid_size,b_event,"
    "components,is_cds,opt_size,wall_ms";

// Instance files: {"side": ell, "points": [[x, y], ...]}; IDs follow order.
[[nodiscard]] Instance instance_from_json(const Json& j);
[[nodiscard]] Json instance_to_json(const Instance& inst);
[[nodiscard]] Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& inst, const std::filesystem::path& path);

/// Accepts a JSON array of IDs or an object with a "members" array.
[[nodiscard]] VertexSet vertex_set_from_json(const Json& j);
[[nodiscard]] VertexSet read_vertex_set(const std::filesystem::path& path);

[[nodiscard]] Json to_json(const CdsResult& r);
[[nodiscard]] Json to_json(const GridCdsResult& r);
[[nodiscard]] Json to_json(const OptResult& r);
[[nodiscard]] Json to_json(const OptBoundsReport& r);
[[nodiscard]] Json to_json(const KmEstimate& r);
[[nodiscard]] Json to_json(const DegreeTailEstimate& r);
[[nodiscard]] Json to_json(const TheoreticalCurves& c);
[[nodiscard]] Json to_json(const SweepSummary& s);

[[nodiscard]] ExperimentConfig config_from_json(const Json& j);
[[nodiscard]] Json config_to_json(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentConfig read_config(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string format_double(double v);

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);

/// Writes results.csv and summary.json into `dir` (created if missing).
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir);

[[nodiscard]] Json read_json_file(const std::filesystem::path& path);

}  // namespace rulek
