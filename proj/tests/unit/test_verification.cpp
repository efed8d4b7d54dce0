#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <string>

#include <gtest/gtest.h>

#include "fqcircle/errors.hpp"
#include "fqcircle/verification.hpp"

namespace {

using namespace fqcircle;

const VerificationReport& default_report() {
    static const VerificationReport report = [] {
        const auto grid = default_grid();
        return run_all_checks(grid, PhysicalParams());
    }();
    return report;
}

TEST(Verification, DefaultGridPasses) {
    const auto& report = default_report();
    EXPECT_EQ(report.grid.size(), 28u);
    EXPECT_TRUE(self_audit(report));
    EXPECT_TRUE(report.gating_passed());
    EXPECT_EQ(report.overall(), "pass");
    for (const auto& c : report.checks) {
        if (c.status == CheckStatus::Informational) continue;
        EXPECT_EQ(c.status, CheckStatus::Pass) << c.name << " " << c.max_residual;
        EXPECT_LE(c.max_residual, c.tolerance) << c.name;
    }
    EXPECT_FALSE(report.version.empty());
    EXPECT_FALSE(report.timestamp.empty());
}

TEST(Verification, InformationalChecksNeverGate) {
    const auto& report = default_report();
    for (std::string_view name : {"arith.exp_quotient", "ops.commutator_seam", "spectral.case_wrap_residual"}) {
        const auto* c = report.find(name);
        ASSERT_NE(c, nullptr) << name;
        EXPECT_EQ(c->status, CheckStatus::Informational);
    }
    // wrap rows and seams do carry nonzero residuals
    EXPECT_GT(report.find("ops.commutator_seam")->max_residual, 1e-3);
    EXPECT_GT(report.find("spectral.case_wrap_residual")->max_residual, 1e-3);
    EXPECT_LE(report.find("arith.exp_quotient")->max_residual, 1e-12);
}

TEST(Verification, NotesDocumentSubstitutions) {
    const auto& report = default_report();
    bool half = false;
    bool wrap = false;
    for (const auto& note : report.notes) {
        half = half || note.find("psi(theta_1)/sin(xi)") != std::string::npos;
        wrap = wrap || note.find("wrap rows") != std::string::npos;
    }
    EXPECT_TRUE(half);
    EXPECT_TRUE(wrap);
}

TEST(Verification, Deterministic) {
    const std::vector<GridPoint> grid = {{3, 0.5}, {8, 2.0}};
    const auto a = run_all_checks(grid, PhysicalParams());
    const auto b = run_all_checks(grid, PhysicalParams());
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        EXPECT_EQ(a.checks[i].name, b.checks[i].name);
        EXPECT_EQ(std::memcmp(&a.checks[i].max_residual, &b.checks[i].max_residual, sizeof(double)), 0);
    }
}

TEST(Verification, EmptyGridIsVacuous) {
    const auto report = run_all_checks({}, PhysicalParams());
    EXPECT_TRUE(report.checks.empty());
    EXPECT_TRUE(report.vacuous());
    EXPECT_EQ(report.overall(), "pass-vacuous");
    EXPECT_TRUE(self_audit(report));
}

TEST(Verification, GridBoundsAreEnforced) {
    const std::vector<GridPoint> small = {{1, 1.0}};
    const std::vector<GridPoint> large = {{5000, 1.0}};
    const std::vector<GridPoint> bad_alpha = {{4, -1.0}};
    EXPECT_THROW(run_all_checks(small, PhysicalParams()), ConfigurationError);
    EXPECT_THROW(run_all_checks(large, PhysicalParams()), ConfigurationError);
    EXPECT_THROW(run_all_checks(bad_alpha, PhysicalParams()), DomainError);
}

TEST(Verification, SelfAuditRejectsIncompleteReports) {
    auto report = default_report();
    report.checks.pop_back();
    EXPECT_FALSE(self_audit(report));
    report = default_report();
    report.checks[0].name = "arith.unlisted";
    EXPECT_FALSE(self_audit(report));
}

TEST(Verification, SinglePointContainsWholeCatalogue) {
    const std::vector<GridPoint> grid = {{2, 0.5}};
    const auto report = run_all_checks(grid, PhysicalParams());
    EXPECT_TRUE(self_audit(report));
    EXPECT_EQ(report.checks.size(), check_catalogue().size());
    EXPECT_EQ(report.overall(), "pass");
}

TEST(Verification, PhysicalParamsDoNotChangeOutcome) {
    const std::vector<GridPoint> grid = {{5, 2.0}, {16, 0.5}};
    const auto report = run_all_checks(grid, PhysicalParams(0.3, 4.0, 2.5));
    EXPECT_EQ(report.overall(), "pass");
}

struct FaultCase {
    Fault fault;
    const char* target;
};

class FaultInjection : public ::testing::TestWithParam<FaultCase> {};

TEST_P(FaultInjection, FlipsExactlyTheTargetedCheck) {
    const auto grid = default_grid();
    const auto report = run_all_checks(grid, PhysicalParams(), VerificationOptions{GetParam().fault});
    EXPECT_EQ(report.overall(), "fail");
    for (const auto& c : report.checks) {
        const auto& baseline = *default_report().find(c.name);
        if (c.name == GetParam().target) {
            EXPECT_EQ(c.status, CheckStatus::Fail) << c.name;
        } else {
            EXPECT_EQ(c.status, baseline.status) << c.name;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Faults, FaultInjection,
                         ::testing::Values(FaultCase{Fault::WeylQSquared, "ops.weyl_pair"},
                                           FaultCase{Fault::CyclicityShortPower, "ops.cyclicity"},
                                           FaultCase{Fault::LadderAdjointSelf, "ops.ladder_adjoint"},
                                           FaultCase{Fault::FactorizationHalved, "ops.factorization"},
                                           FaultCase{Fault::HermitianSkew, "ops.hamiltonian_hermitian"},
                                           FaultCase{Fault::SpectrumShift, "spectral.free_spectrum"}),
                         [](const ::testing::TestParamInfo<FaultCase>& info) {
                             std::string name = info.param.target;
                             std::replace(name.begin(), name.end(), '.', '_');
                             return name;
                         });

TEST(Catalogue, FixedAndUnique) {
    const auto cat = check_catalogue();
    EXPECT_EQ(cat.size(), 26u);
    std::map<std::string_view, int> seen;
    for (const auto& spec : cat) {
        EXPECT_EQ(++seen[spec.name], 1) << spec.name;
        EXPECT_FALSE(spec.relation.empty());
        if (spec.gating) EXPECT_TRUE(spec.tolerance == 0.0 || spec.tolerance == 1e-12 || spec.tolerance == 1e-10);
    }
}

}  // namespace
