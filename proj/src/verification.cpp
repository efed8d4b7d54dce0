#include "fqcircle/verification.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numbers>
#include <string>

#include "fqcircle/deformed_arithmetic.hpp"
#include "fqcircle/errors.hpp"
#include "fqcircle/lattice.hpp"
#include "fqcircle/spectral.hpp"
#include "fqcircle/version.hpp"

namespace fqcircle {

namespace {

constexpr double kAlgebraic = 1e-12;
constexpr double kSpectral = 1e-10;

constexpr std::array<CheckSpec, 26> kCatalogue{{
    {"arith.identity", "a (+) 0 = a", 0.0, true},
    {"arith.commutativity", "a (+) b = b (+) a", 0.0, true},
    {"arith.associativity", "(a (+) b) (+) c = a (+) (b (+) c)", kAlgebraic, true},
    {"arith.add_sub_roundtrip", "(a (+) b) (-) b = a", kAlgebraic, true},
    {"arith.exp_homomorphism", "e_alpha(z (+) w) = e_alpha(z) e_alpha(w)", kAlgebraic, true},
    {"arith.exp_quotient", "e_alpha(z (-) w) = e_alpha(z) / e_alpha(w)", kAlgebraic, false},
    {"lattice.alpha_spacing", "theta_{n+1} (-) theta_n = 2 pi / d^(1/alpha)", kSpectral, true},
    {"ops.unitarity", "U^dag U = U U^dag = I, V^dag V = I", kAlgebraic, true},
    {"ops.cyclicity", "U^d = (U^dag)^d = I, V^d = I", kAlgebraic, true},
    {"ops.weyl_pair", "V U^dag = q U^dag V, V U = q^-1 U V, q = exp(2 pi i/d)", kAlgebraic, true},
    {"ops.deformed_commutator", "theta U (-) U theta = -sigma U, theta U^dag (-) U^dag theta = sigma U^dag",
     kSpectral, true},
    {"ops.deformed_power_law",
     "theta (U^dag)^r = (U^dag)^r (theta (+) r^(1/alpha) sigma), theta U^r = U^r (theta (-) r^(1/alpha) sigma)",
     kSpectral, true},
    {"ops.commutator_seam", "deformed commutators on columns crossing theta_d == theta_0", kSpectral, false},
    {"ops.ladder_adjoint", "L+^dag = L-", 0.0, true},
    {"ops.factorization", "2 m R^2 H = L+ L- = -(hbar^2/sigma^(2 alpha))(U + U^-1 - 2I)", kAlgebraic, true},
    {"ops.hamiltonian_hermitian", "H = H^dag", 0.0, true},
    {"spectral.free_spectrum", "{E_N : d xi = 2 N pi} = spec(H) as multisets", kSpectral, true},
    {"spectral.dual_oracle", "dense eigensolver spectrum = circulant DFT spectrum", kSpectral, true},
    {"spectral.energy_bound", "0 <= E <= 2 hbar^2/(m R^2 sigma^(2 alpha))", kSpectral, true},
    {"spectral.recurrence_polynomials", "psi_2, psi_3 equal the explicit recurrence polynomials", kAlgebraic,
     true},
    {"spectral.recurrence_closed_form", "recurrence = (psi_1 sin(n xi) - psi_0 sin((n-1) xi))/sin xi",
     kSpectral, true},
    {"spectral.closed_form_forms",
     "(psi_1 sin(n xi) - psi_0 sin((n-1) xi))/sin xi = ((psi_1 - psi_0 cos xi)/sin xi) sin(n xi) + psi_0 cos(n xi)",
     kAlgebraic, true},
    {"spectral.cyclic_constraint", "boundary-case initial data give psi(theta_d) = psi(theta_0)", kAlgebraic,
     true},
    {"spectral.case_interior_residual", "case wavefunctions solve H psi = E psi on rows 1..d-2", kSpectral, true},
    {"spectral.full_period_eigenvectors", "full-period wavefunctions are eigenvectors of H", kSpectral, true},
    {"spectral.case_wrap_residual", "quarter/half/three-quarter wavefunctions on the wrap rows 0, d-1",
     kSpectral, false},
}};

constexpr std::size_t index_of(std::string_view name) {
    for (std::size_t i = 0; i < kCatalogue.size(); ++i) {
        if (kCatalogue[i].name == name) {
            return i;
        }
    }
    return kCatalogue.size();
}

using Residuals = std::array<double, kCatalogue.size()>;

class PointChecker {
  public:
    PointChecker(const GridPoint& point, const PhysicalParams& params, Fault fault)
        : alpha_(point.alpha),
          lattice_(build_lattice(point.d, alpha_)),
          params_(params),
          fault_(fault) {
        residuals_.fill(0.0);
    }

    Residuals run() {
        arithmetic();
        lattice_spacing();
        operators();
        spectrum();
        recurrence();
        boundary_cases();
        return residuals_;
    }

  private:
    void record(std::string_view name, double residual) {
        auto& slot = residuals_[index_of(name)];
        // NaN propagates so that it can never pass.
        slot = std::isnan(residual) ? residual : std::max(slot, residual);
    }

    double phi(double x) const { return to_linear(x, alpha_); }

    void arithmetic() {
        static constexpr std::array<double, 12> kSamples{-1000.0, -37.5, -2.25, -1.0, -0.3, 0.001,
                                                         0.5,     1.0,   3.0,   7.75, 123.456, 999.0};
        for (double a : kSamples) {
            record("arith.identity", std::fabs(alpha_add(a, 0.0, alpha_) - a));
            for (double b : kSamples) {
                const double ab = alpha_add(a, b, alpha_);
                record("arith.commutativity", std::fabs(ab - alpha_add(b, a, alpha_)));
                const double scale2 = std::max({1.0, std::fabs(phi(a)), std::fabs(phi(b))});
                record("arith.add_sub_roundtrip", std::fabs(phi(alpha_sub(ab, b, alpha_)) - phi(a)) / scale2);
                for (double c : kSamples) {
                    const double lhs = alpha_add(ab, c, alpha_);
                    const double rhs = alpha_add(a, alpha_add(b, c, alpha_), alpha_);
                    const double scale3 = std::max(scale2, std::fabs(phi(c)));
                    record("arith.associativity", std::fabs(phi(lhs) - phi(rhs)) / scale3);
                }
            }
        }
        // Exponents stay below log(DBL_MAX) for every pair.
        static constexpr std::array<double, 10> kExponents{-300.0, -50.0, -1.0, -0.1, 0.0,
                                                           0.2,    1.0,   10.0, 100.0, 340.0};
        for (double zu : kExponents) {
            const double z = from_linear(zu, alpha_);
            for (double wu : kExponents) {
                const double w = from_linear(wu, alpha_);
                const double joined = alpha_exp(alpha_add(z, w, alpha_), alpha_);
                const double product = alpha_exp(z, alpha_) * alpha_exp(w, alpha_);
                record("arith.exp_homomorphism", std::fabs(joined - product) / product);
                const double split = alpha_exp(alpha_sub(z, w, alpha_), alpha_);
                const double quotient = alpha_div(alpha_exp(z, alpha_), alpha_exp(w, alpha_));
                record("arith.exp_quotient", std::fabs(split - quotient) / quotient);
            }
        }
    }

    void lattice_spacing() {
        const auto angles = lattice_.angles();
        const std::size_t d = lattice_.dimension();
        for (std::size_t n = 0; n + 1 < d; ++n) {
            record("lattice.alpha_spacing", std::fabs(alpha_sub(angles[n + 1], angles[n], alpha_) - lattice_.sigma()));
        }
        // virtual point theta_d = 2 pi closes the circle
        record("lattice.alpha_spacing",
               std::fabs(alpha_sub(2.0 * std::numbers::pi, angles[d - 1], alpha_) - lattice_.sigma()));
    }

    void operators() {
        const std::size_t d = lattice_.dimension();
        const auto n = static_cast<Eigen::Index>(d);
        const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
        const ComplexMatrix theta = angle_operator(lattice_);
        const ComplexMatrix u = translation_u(d);
        const ComplexMatrix v = v_operator(lattice_);
        const Eigen::MatrixXcd& U = u.entries();
        const Eigen::MatrixXcd& V = v.entries();

        record("ops.unitarity", max_abs_difference(Eigen::MatrixXcd(U.adjoint() * U), I));
        record("ops.unitarity", max_abs_difference(Eigen::MatrixXcd(U * U.adjoint()), I));
        record("ops.unitarity", max_abs_difference(Eigen::MatrixXcd(V.adjoint() * V), I));

        const std::size_t power = fault_ == Fault::CyclicityShortPower ? d - 1 : d;
        record("ops.cyclicity", max_abs_difference(matrix_power(u, power).entries(), I));
        record("ops.cyclicity", max_abs_difference(matrix_power(u.adjoint(), power).entries(), I));
        record("ops.cyclicity", max_abs_difference(matrix_power(v, power).entries(), I));

        Complex q = q_factor(d);
        if (fault_ == Fault::WeylQSquared) {
            q *= q;
        }
        record("ops.weyl_pair", weyl_relation_residual(v, u, q));

        for (std::size_t r = 1; r <= std::min<std::size_t>(3, d - 1); ++r) {
            const CommutatorReport report = deformed_commutator_check(theta, u, lattice_, r);
            if (r == 1) {
                record("ops.deformed_commutator",
                       std::max(report.forward.interior_max, report.adjoint.interior_max));
            }
            record("ops.deformed_power_law",
                   std::max(report.power_adjoint.interior_max, report.power_forward.interior_max));
            record("ops.commutator_seam", report.seam_max());
        }

        const ComplexMatrix lp = l_plus(lattice_, params_);
        const ComplexMatrix lm = l_minus(lattice_, params_);
        const ComplexMatrix& adjoint_target = fault_ == Fault::LadderAdjointSelf ? lp : lm;
        record("ops.ladder_adjoint", max_abs_difference(lp.adjoint(), adjoint_target));

        const ComplexMatrix h = hamiltonian_free(lattice_, params_);
        const double inertia_factor = (fault_ == Fault::FactorizationHalved ? 1.0 : 2.0) * params_.inertia();
        const Eigen::MatrixXcd product = lp.entries() * lm.entries();
        record("ops.factorization", scaled_difference(inertia_factor * h.entries(), product));
        const double c = params_.hbar() * params_.hbar() / lattice_.sigma_pow_2alpha();
        const Eigen::MatrixXcd explicit_form = -c * (U + U.adjoint() - 2.0 * I);
        record("ops.factorization", scaled_difference(product, explicit_form));

        Eigen::MatrixXcd herm = h.entries();
        if (fault_ == Fault::HermitianSkew) {
            herm(0, 1) += Complex(0.0, 1e-6);
        }
        record("ops.hamiltonian_hermitian", hermiticity_residual(ComplexMatrix(herm, OperatorRole::Hamiltonian)));
    }

    void spectrum() {
        const double unit = params_.energy_unit();
        const double bound = energy_bound(lattice_, params_);
        const ComplexMatrix h = hamiltonian_free(lattice_, params_);

        std::vector<double> numeric;
        for (const auto& s : diagonalize(h)) {
            numeric.push_back(s.energy / unit);
        }
        std::vector<double> circulant;
        for (const auto& s : circulant_spectrum(h)) {
            circulant.push_back(s.energy / unit);
        }
        std::vector<double> closed = case_energy_multiset(CaseKind::FullPeriod, lattice_, params_);
        for (double& e : closed) {
            e = e / unit + (fault_ == Fault::SpectrumShift ? 1e-6 : 0.0);
        }
        record("spectral.free_spectrum", spectrum_distance(closed, numeric));
        record("spectral.dual_oracle", spectrum_distance(numeric, circulant));

        auto violation = [&](double e_raw) {
            return std::max({0.0, -e_raw, e_raw - bound}) / unit;
        };
        for (double e : numeric) {
            record("spectral.energy_bound", violation(e * unit));
        }
        for (auto kind : {CaseKind::FullPeriod, CaseKind::QuarterPeriod, CaseKind::HalfPeriod,
                          CaseKind::ThreeQuarterPeriod}) {
            for (double e : case_energy_multiset(kind, lattice_, params_)) {
                record("spectral.energy_bound", violation(e));
            }
        }
    }

    void recurrence() {
        static constexpr std::array<double, 7> kFractions{0.0, 0.05, 0.3, 0.5, 0.77, 0.999, 1.0};
        static const std::array<RecurrenceInit, 3> kInits{RecurrenceInit{1.0, 0.0}, RecurrenceInit{0.0, 1.0},
                                                          RecurrenceInit{{1.0, 0.5}, {-0.25, 2.0}}};
        const std::size_t d = lattice_.dimension();
        const double bound = energy_bound(lattice_, params_);
        const double k_scale = params_.inertia() * lattice_.sigma_pow_2alpha() / (params_.hbar() * params_.hbar());
        for (double fraction : kFractions) {
            const double energy = fraction * bound;
            const SpectralAngle xi = xi_from_energy(energy, lattice_, params_);
            for (const auto& init : kInits) {
                const auto psi = propagate_recurrence(init, energy, lattice_, params_);
                if (d >= 3) {
                    const double t = 2.0 - 2.0 * k_scale * energy;
                    const Complex p2 = t * init.psi1 - init.psi0;
                    const Complex p3 = (t * t - 1.0) * init.psi1 - t * init.psi0;
                    const double scale = std::max({1.0, std::abs(p2), std::abs(p3)});
                    record("spectral.recurrence_polynomials",
                           std::max(std::abs(psi[2] - p2), std::abs(psi[3] - p3)) / scale);
                }
                double amplitude = 1.0;
                for (const auto& value : psi) {
                    amplitude = std::max(amplitude, std::abs(value));
                }
                for (std::size_t n = 0; n <= d; ++n) {
                    const auto idx = static_cast<std::int64_t>(n);
                    const Complex closed = wavefunction_sample(init, xi, idx);
                    record("spectral.recurrence_closed_form", std::abs(closed - psi[n]) / amplitude);
                    if (!xi.degenerate()) {
                        const Complex alt = closed_form_wavefunction_alt(init, xi, idx);
                        record("spectral.closed_form_forms",
                               std::abs(closed - alt) / std::max(1.0, std::abs(closed)));
                    }
                }
            }
        }
    }

    void boundary_cases() {
        const std::size_t d = lattice_.dimension();
        const ComplexMatrix h = hamiltonian_free(lattice_, params_);
        for (auto kind : {CaseKind::FullPeriod, CaseKind::QuarterPeriod, CaseKind::HalfPeriod,
                          CaseKind::ThreeQuarterPeriod}) {
            for (std::size_t n = 0; n < d; ++n) {
                const QuantizationCase qcase(kind, static_cast<std::int64_t>(n));
                const double xi = qcase.raw_xi(d);
                Complex psi0 = kind == CaseKind::HalfPeriod ? Complex{} : Complex{1.0};
                Complex psi1 = kind == CaseKind::HalfPeriod ? Complex{1.0} : psi0 * (std::cos(xi) + 0.5 * std::sin(xi));
                if (const auto forced = case_constrained_psi1(qcase, d, psi0)) {
                    psi1 = *forced;
                }
                const RecurrenceInit init(psi0, psi1);
                if (std::sin(xi) != 0.0 && kind != CaseKind::FullPeriod) {
                    record("spectral.cyclic_constraint", std::abs(cyclic_residual(init, qcase, d)));
                }
                const auto psi = case_wavefunction(qcase, lattice_, init);
                const auto residual = schrodinger_residual(h, psi, case_energy(qcase, lattice_, params_));
                if (kind == CaseKind::FullPeriod) {
                    record("spectral.full_period_eigenvectors", residual.full);
                } else {
                    record("spectral.case_interior_residual", residual.interior);
                    record("spectral.case_wrap_residual", residual.wrap);
                }
            }
        }
    }

    DeformationParameter alpha_;
    Lattice lattice_;
    PhysicalParams params_;
    Fault fault_;
    Residuals residuals_{};
};

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string_view to_string(CheckStatus status) noexcept {
    switch (status) {
        case CheckStatus::Pass:
            return "pass";
        case CheckStatus::Fail:
            return "fail";
        case CheckStatus::Informational:
            return "informational";
    }
    return "fail";
}

std::span<const CheckSpec> check_catalogue() noexcept { return kCatalogue; }

bool VerificationReport::gating_passed() const noexcept {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

std::string_view VerificationReport::overall() const noexcept {
    if (vacuous()) {
        return "pass-vacuous";
    }
    return gating_passed() ? "pass" : "fail";
}

const CheckResult* VerificationReport::find(std::string_view name) const noexcept {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
}

std::vector<GridPoint> default_grid() {
    std::vector<GridPoint> grid;
    for (std::size_t d : {2, 3, 4, 8, 16, 32, 64}) {
        for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
            grid.push_back({d, alpha});
        }
    }
    return grid;
}

VerificationReport run_all_checks(std::span<const GridPoint> grid, const PhysicalParams& params,
                                  const VerificationOptions& options) {
    for (const auto& point : grid) {
        if (point.d < kMinDimension || point.d > kMaxDimension) {
            throw ConfigurationError("grid dimension " + std::to_string(point.d) + " outside [2, 4096]");
        }
        DeformationParameter{point.alpha};
    }

    VerificationReport report;
    report.grid.assign(grid.begin(), grid.end());
    report.hbar = params.hbar();
    report.mass = params.mass();
    report.radius = params.radius();
    report.timestamp = utc_timestamp();
    report.version = kVersion;
    report.notes = {
        "half-period wavefunctions use the amplitude psi(theta_1)/sin(xi): the case forces psi(theta_0) = 0, so a "
        "psi(theta_0) prefactor would make the wavefunction vanish identically",
        "quarter/half/three-quarter wavefunctions only satisfy psi(theta_d) = psi(theta_0); their residuals on the "
        "wrap rows of the cyclic Hamiltonian are reported, not gated",
        "the power laws are checked with the angle operator in the role of X, on eigenvalue coefficients",
        "e_alpha(z (-) w) = e_alpha(z) / e_alpha(w) is checked as ordinary division (informational)",
        "arithmetic residuals are measured in the coordinate phi(x) = x|x|^(alpha-1), relative to the operand "
        "scale; matrix identities use max|A - B| / max(1, max|B|); Schrodinger residuals are relative to ||H||_inf "
        "for unit-norm vectors",
    };
    if (grid.empty()) {
        return report;
    }

    Residuals worst;
    worst.fill(0.0);
    std::array<std::optional<GridPoint>, kCatalogue.size()> worst_point;
    for (const auto& point : grid) {
        const Residuals residuals = PointChecker(point, params, options.fault).run();
        for (std::size_t i = 0; i < kCatalogue.size(); ++i) {
            if (std::isnan(worst[i])) {
                continue;
            }
            if (!worst_point[i] || std::isnan(residuals[i]) || residuals[i] > worst[i]) {
                worst[i] = residuals[i];
                worst_point[i] = point;
            }
        }
    }

    for (std::size_t i = 0; i < kCatalogue.size(); ++i) {
        const auto& spec = kCatalogue[i];
        CheckResult result;
        result.name = spec.name;
        result.relation = spec.relation;
        result.max_residual = worst[i];
        result.tolerance = spec.tolerance;
        result.worst_point = worst_point[i];
        if (!spec.gating) {
            result.status = CheckStatus::Informational;
        } else {
            result.status = worst[i] <= spec.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
        }
        report.checks.push_back(std::move(result));
    }
    return report;
}

bool self_audit(const VerificationReport& report) noexcept {
    if (report.checks.empty()) {
        return report.grid.empty();
    }
    if (report.checks.size() != kCatalogue.size()) {
        return false;
    }
    for (std::size_t i = 0; i < kCatalogue.size(); ++i) {
        if (report.checks[i].name != kCatalogue[i].name) {
            return false;
        }
    }
    return true;
}

}  // namespace fqcircle
