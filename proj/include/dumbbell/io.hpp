#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "dumbbell/analysis.hpp"
#include "dumbbell/energy.hpp"
#include "dumbbell/geometry.hpp"
#include "dumbbell/minimise.hpp"
#include "dumbbell/regimes.hpp"

namespace dumbbell {

// Write content to path via a temp file in the same directory plus rename, so
// failures never leave partial output.
void write_file_atomic(const std::string& path, const std::string& content);
void write_file_atomic(const std::string& path, const void* data,
                       std::size_t size);

// Text grid dump: cell counts, axis nodes, run-length-encoded mask
// (format documented in the README).
std::string grid_dump(const DumbbellGrid& grid);

// Flat binary field dump with header (magic, dims, axis nodes, RLE'd mask,
// active values); see README for the layout.
std::string field_dump(const DumbbellGrid& grid, const Eigen::VectorXd& field);

// JSON adapters (nlohmann).
nlohmann::json to_json(const RegimeReport& report);
RegimeReport regime_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EnergyBreakdown& breakdown);
EnergyBreakdown energy_breakdown_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SolveDiagnostics& diag);
nlohmann::json to_json(const SweepRow& row);
SweepRow sweep_row_from_json(const nlohmann::json& j);

// Fixed-order CSV for sweep rows; header documented in the README.
std::string sweep_csv_header();
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace dumbbell
