#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fqcircle/operators.hpp"

namespace fqcircle {

struct GridPoint {
    std::size_t d = 0;
    double alpha = 1.0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

enum class CheckStatus { Pass, Fail, Informational };

std::string_view to_string(CheckStatus status) noexcept;

/// One entry of the fixed check catalogue. Tolerances are part of the
/// catalogue and not configurable.
struct CheckSpec {
    std::string_view name;
    std::string_view relation;
    double tolerance;
    bool gating;
};

/// The fixed, ordered catalogue every report is audited against.
std::span<const CheckSpec> check_catalogue() noexcept;

struct CheckResult {
    std::string name;
    std::string relation;
    double max_residual = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::Pass;
    std::optional<GridPoint> worst_point;
};

/// Deliberate corruption of a single check, for negative controls.
enum class Fault {
    None,
    WeylQSquared,         // q -> q^2 in the Weyl pair
    CyclicityShortPower,  // U^(d-1) instead of U^d
    LadderAdjointSelf,    // compares L+^dagger against L+ instead of L-
    FactorizationHalved,  // m R^2 H instead of 2 m R^2 H
    HermitianSkew,        // perturbs one off-diagonal entry of H
    SpectrumShift,        // shifts the closed-form levels by 1e-6
};

struct VerificationOptions {
    Fault fault = Fault::None;
};

struct VerificationReport {
    std::vector<GridPoint> grid;
    double hbar = 1.0;
    double mass = 1.0;
    double radius = 1.0;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    std::string timestamp;
    std::string version;

    [[nodiscard]] bool vacuous() const noexcept { return checks.empty(); }
    /// True when no gating check failed (also for a vacuous report).
    [[nodiscard]] bool gating_passed() const noexcept;
    /// "pass", "fail" or "pass-vacuous".
    [[nodiscard]] std::string_view overall() const noexcept;
    [[nodiscard]] const CheckResult* find(std::string_view name) const noexcept;
};

/// d in {2,3,4,8,16,32,64} x alpha in {0.5,1,2,3}.
std::vector<GridPoint> default_grid();

/// Runs every catalogue check at every grid point and keeps the worst residual
/// per check. Throws ConfigurationError for d outside [2, 4096] and
/// DomainError for alpha <= 0.
VerificationReport run_all_checks(std::span<const GridPoint> grid, const PhysicalParams& params,
                                  const VerificationOptions& options = {});

/// The report's check names are exactly the catalogue, in order (or empty).
bool self_audit(const VerificationReport& report) noexcept;

}  // namespace fqcircle
