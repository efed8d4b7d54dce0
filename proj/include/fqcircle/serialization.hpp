#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fqcircle/lattice.hpp"
#include "fqcircle/operators.hpp"
#include "fqcircle/spectral.hpp"
#include "fqcircle/verification.hpp"

namespace fqcircle {

/// %.17g; round-trips every double.
std::string format_double(double value);

nlohmann::json lattice_to_json(const Lattice& lattice);
std::string lattice_to_csv(const Lattice& lattice);

/// {role, dim, entries}, entries row by row with complex values as [re, im].
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Energies in units of hbar^2/(m R^2); raw values under *_raw.
nlohmann::json level_to_json(const LevelRecord& level, const Lattice& lattice, const PhysicalParams& params);
nlohmann::json oracle_level_to_json(const EigenSolution& solution, const Lattice& lattice,
                                    const PhysicalParams& params);
std::string levels_csv_header();
std::string level_to_csv_row(const LevelRecord& level, const Lattice& lattice, const PhysicalParams& params);
std::string oracle_level_to_csv_row(const EigenSolution& solution, const Lattice& lattice,
                                    const PhysicalParams& params);

nlohmann::json report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);
/// Fixed-width human-readable table.
std::string report_to_table(const VerificationReport& report);

}  // namespace fqcircle
