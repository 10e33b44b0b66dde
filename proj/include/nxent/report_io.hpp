#pragma once

// Serialization of reports and plot-ready data. Every float is written with
// 17 significant digits so files round-trip exactly.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "nxent/moments.hpp"
#include "nxent/relations.hpp"
#include "nxent/transform.hpp"

namespace nxent {

std::string format_double(double x);

/// Compact-ish JSON text (two-space indent) with 17-digit floats.
/// Non-finite numbers become null.
std::string dump_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const RelationReport& r);
nlohmann::json moments_to_json(const MomentSet& m);
nlohmann::json density_moments_to_json(const DensityMoments& d);
nlohmann::json eta_to_json(const EtaEstimate& e);

/// Header `xi,k,w`, one row per node in row-major order.
std::string density_csv(const PhaseDensity& w);
/// Grid metadata plus the row-major values.
nlohmann::json density_json(const PhaseDensity& w);
/// Header `n,s`.
std::string number_dist_csv(const DiscreteDist& s);

/// Writes to a temporary file in the same directory, then renames it into
/// place. Throws Error on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace nxent
