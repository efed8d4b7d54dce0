#include "fqcircle/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "fqcircle/errors.hpp"

namespace fqcircle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kConstraintTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t case_offset_steps(CaseKind kind) {
    switch (kind) {
        case CaseKind::FullPeriod:
            return 0;
        case CaseKind::QuarterPeriod:
            return 1;
        case CaseKind::HalfPeriod:
            return 2;
        case CaseKind::ThreeQuarterPeriod:
            return 3;
    }
    return 0;
}

// n * xi for xi = steps * pi / (2d), with the product reduced exactly mod 2 pi.
double phase_of(std::int64_t n, std::int64_t steps, std::size_t d) {
    const auto period = 4 * static_cast<std::int64_t>(d);
    const std::int64_t reduced = positive_mod(positive_mod(n, period) * steps, period);
    return static_cast<double>(reduced) * kPi / (2.0 * static_cast<double>(d));
}

// (hbar d)^2 / (m R^2 (2 pi)^(2 alpha)), equal to hbar^2 / (m R^2 sigma^(2 alpha)).
double level_prefactor(const Lattice& lattice, const PhysicalParams& params) {
    const double hd = params.hbar() * static_cast<double>(lattice.dimension());
    return hd * hd / (params.inertia() * std::pow(kTwoPi, 2.0 * lattice.alpha().value()));
}

// k = m R^2 sigma^(2 alpha) E / hbar^2, so cos xi = 1 - k.
double energy_to_k(double energy, const Lattice& lattice, const PhysicalParams& params) {
    return params.inertia() * lattice.sigma_pow_2alpha() * energy / (params.hbar() * params.hbar());
}

void require_constraint(bool ok, const std::string& message) {
    if (!ok) {
        throw ConsistencyError(message);
    }
}

}  // namespace

SpectralAngle::SpectralAngle(double xi) : xi_(xi) {
    if (!std::isfinite(xi) || xi < 0.0 || xi > kPi) {
        throw DomainError("spectral angle must lie in [0, pi], got " + std::to_string(xi));
    }
}

bool SpectralAngle::degenerate() const noexcept { return xi_ == 0.0 || xi_ == kPi; }

RecurrenceInit::RecurrenceInit(Complex p0, Complex p1) : psi0(p0), psi1(p1) {
    auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!finite(p0) || !finite(p1)) {
        throw DomainError("recurrence initial values must be finite");
    }
    if (p0 == Complex{} && p1 == Complex{}) {
        throw DomainError("recurrence initial values psi(theta_0), psi(theta_1) are both zero");
    }
}

std::string_view to_string(CaseKind kind) noexcept {
    switch (kind) {
        case CaseKind::FullPeriod:
            return "full";
        case CaseKind::QuarterPeriod:
            return "quarter";
        case CaseKind::HalfPeriod:
            return "half";
        case CaseKind::ThreeQuarterPeriod:
            return "threequarter";
    }
    return "full";
}

std::optional<CaseKind> case_kind_from_string(std::string_view name) noexcept {
    for (auto kind : {CaseKind::FullPeriod, CaseKind::QuarterPeriod, CaseKind::HalfPeriod,
                      CaseKind::ThreeQuarterPeriod}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

QuantizationCase::QuantizationCase(CaseKind kind, std::int64_t n) : kind_(kind), n_(n) {}

std::int64_t QuantizationCase::raw_quarter_steps(std::size_t d) const noexcept {
    const auto period = 4 * static_cast<std::int64_t>(d);
    return positive_mod(4 * positive_mod(n_, static_cast<std::int64_t>(d)) + case_offset_steps(kind_), period);
}

std::int64_t QuantizationCase::folded_quarter_steps(std::size_t d) const noexcept {
    const auto period = 4 * static_cast<std::int64_t>(d);
    const std::int64_t raw = raw_quarter_steps(d);
    return raw > period / 2 ? period - raw : raw;
}

double QuantizationCase::raw_xi(std::size_t d) const noexcept {
    return static_cast<double>(raw_quarter_steps(d)) * kPi / (2.0 * static_cast<double>(d));
}

SpectralAngle QuantizationCase::principal_xi(std::size_t d) const {
    const std::int64_t steps = folded_quarter_steps(d);
    if (steps == 2 * static_cast<std::int64_t>(d)) {
        return SpectralAngle(kPi);
    }
    return SpectralAngle(static_cast<double>(steps) * kPi / (2.0 * static_cast<double>(d)));
}

bool QuantizationCase::folded(std::size_t d) const noexcept {
    const std::int64_t unreduced = 4 * n_ + case_offset_steps(kind_);
    return unreduced < 0 || unreduced > 2 * static_cast<std::int64_t>(d);
}

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::ClosedForm:
            return "closed_form";
        case Provenance::Oracle:
            return "oracle";
        case Provenance::CirculantOracle:
            return "circulant_oracle";
    }
    return "oracle";
}

std::vector<Complex> propagate_recurrence(const RecurrenceInit& init, double energy, const Lattice& lattice,
                                          const PhysicalParams& params) {
    if (!std::isfinite(energy)) {
        throw DomainError("propagate_recurrence: energy must be finite");
    }
    const std::size_t d = lattice.dimension();
    const double coefficient = 2.0 - 2.0 * energy_to_k(energy, lattice, params);
    std::vector<Complex> psi(d + 1);
    psi[0] = init.psi0;
    psi[1] = init.psi1;
    for (std::size_t n = 1; n < d; ++n) {
        psi[n + 1] = coefficient * psi[n] - psi[n - 1];
    }
    return psi;
}

double energy_bound(const Lattice& lattice, const PhysicalParams& params) {
    return 2.0 * params.hbar() * params.hbar() / (params.inertia() * lattice.sigma_pow_2alpha());
}

SpectralAngle xi_from_energy(double energy, const Lattice& lattice, const PhysicalParams& params) {
    const double bound = energy_bound(lattice, params);
    const double slack = 1e-12 * bound;
    if (!std::isfinite(energy) || energy < -slack || energy > bound + slack) {
        throw DomainError("energy " + std::to_string(energy) + " outside the spectral bound [0, " +
                          std::to_string(bound) + "] = [0, 2 hbar^2/(m R^2 sigma^(2 alpha))]");
    }
    // With k = 2E/bound: sin(xi/2) = sqrt(k/2), cos(xi/2) = sqrt(1 - k/2). The
    // difference bound - E is exact near the ceiling, so xi = pi is hit exactly.
    const double e = std::clamp(energy, 0.0, bound);
    return SpectralAngle(2.0 * std::atan2(std::sqrt(e), std::sqrt(bound - e)));
}

double energy_from_xi(const SpectralAngle& xi, const Lattice& lattice, const PhysicalParams& params) {
    const double half_sin = std::sin(0.5 * xi.value());
    return level_prefactor(lattice, params) * 2.0 * half_sin * half_sin;
}

Complex closed_form_wavefunction(const RecurrenceInit& init, const SpectralAngle& xi, std::int64_t n) {
    if (xi.degenerate()) {
        throw DegenerateCaseError("closed-form wavefunction divides by sin(xi) = 0; use wavefunction_limit");
    }
    const double x = xi.value();
    const auto nn = static_cast<double>(n);
    return (init.psi1 * std::sin(nn * x) - init.psi0 * std::sin((nn - 1.0) * x)) / std::sin(x);
}

Complex closed_form_wavefunction_alt(const RecurrenceInit& init, const SpectralAngle& xi, std::int64_t n) {
    if (xi.degenerate()) {
        throw DegenerateCaseError("closed-form wavefunction divides by sin(xi) = 0; use wavefunction_limit");
    }
    const double x = xi.value();
    const auto nn = static_cast<double>(n);
    const Complex amplitude = (init.psi1 - init.psi0 * std::cos(x)) / std::sin(x);
    return amplitude * std::sin(nn * x) + init.psi0 * std::cos(nn * x);
}

Complex wavefunction_limit(const RecurrenceInit& init, const SpectralAngle& xi, std::int64_t n) {
    const auto nn = static_cast<double>(n);
    if (xi.value() == 0.0) {
        return init.psi0 + nn * (init.psi1 - init.psi0);
    }
    if (xi.value() == kPi) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        return sign * (init.psi0 - nn * (init.psi1 + init.psi0));
    }
    throw DomainError("wavefunction_limit: xi is neither 0 nor pi");
}

Complex wavefunction_sample(const RecurrenceInit& init, const SpectralAngle& xi, std::int64_t n) {
    return xi.degenerate() ? wavefunction_limit(init, xi, n) : closed_form_wavefunction(init, xi, n);
}

Complex cyclic_residual(const RecurrenceInit& init, double xi, std::size_t d) {
    const double s = std::sin(xi);
    if (s == 0.0 || !std::isfinite(xi)) {
        throw DegenerateCaseError("cyclic_residual requires sin(xi) != 0");
    }
    const double dx = static_cast<double>(d) * xi;
    return (init.psi1 - init.psi0 * std::cos(xi)) * std::sin(dx) + init.psi0 * s * std::cos(dx) - init.psi0 * s;
}

Complex cyclic_residual(const RecurrenceInit& init, const QuantizationCase& qcase, std::size_t d) {
    const double xi = qcase.raw_xi(d);
    const double s = std::sin(xi);
    if (s == 0.0) {
        throw DegenerateCaseError("cyclic_residual requires sin(xi) != 0");
    }
    const double dx = phase_of(static_cast<std::int64_t>(d), qcase.raw_quarter_steps(d), d);
    return (init.psi1 - init.psi0 * std::cos(xi)) * std::sin(dx) + init.psi0 * s * std::cos(dx) - init.psi0 * s;
}

double case_energy(const QuantizationCase& qcase, const Lattice& lattice, const PhysicalParams& params) {
    return energy_from_xi(qcase.principal_xi(lattice.dimension()), lattice, params);
}

std::optional<Complex> case_constrained_psi1(const QuantizationCase& qcase, std::size_t d, Complex psi0) {
    const double xi = qcase.raw_xi(d);
    const std::int64_t steps = qcase.raw_quarter_steps(d);
    switch (qcase.kind()) {
        case CaseKind::FullPeriod:
            if (steps == 0) {
                return psi0;
            }
            if (steps == 2 * static_cast<std::int64_t>(d)) {
                return -psi0;
            }
            return std::nullopt;
        case CaseKind::QuarterPeriod:
            return psi0 * (std::cos(xi) + std::sin(xi));
        case CaseKind::HalfPeriod:
            return std::nullopt;
        case CaseKind::ThreeQuarterPeriod:
            return psi0 * (std::cos(xi) - std::sin(xi));
    }
    return std::nullopt;
}

std::vector<Complex> case_wavefunction(const QuantizationCase& qcase, const Lattice& lattice,
                                       const RecurrenceInit& init) {
    const std::size_t d = lattice.dimension();
    const auto period_half = 2 * static_cast<std::int64_t>(d);
    const std::int64_t steps = qcase.raw_quarter_steps(d);
    const double xi = qcase.raw_xi(d);
    const double scale = std::max({1.0, std::abs(init.psi0), std::abs(init.psi1)});
    std::vector<Complex> psi(d);

    if (const auto expected = case_constrained_psi1(qcase, d, init.psi0)) {
        std::string rule;
        switch (qcase.kind()) {
            case CaseKind::QuarterPeriod:
                rule = "psi(theta_1) = psi(theta_0)(cos xi + sin xi)";
                break;
            case CaseKind::ThreeQuarterPeriod:
                rule = "psi(theta_1) = psi(theta_0)(cos xi - sin xi)";
                break;
            default:
                rule = "psi(theta_1) = psi(theta_0) cos xi (degenerate full-period mode)";
                break;
        }
        require_constraint(std::abs(init.psi1 - *expected) <= kConstraintTolerance * scale,
                           std::string(to_string(qcase.kind())) + "-period case requires " + rule);
    }

    switch (qcase.kind()) {
        case CaseKind::FullPeriod: {
            if (steps == 0 || steps == period_half) {
                for (std::size_t n = 0; n < d; ++n) {
                    const bool flip = steps == period_half && n % 2 == 1;
                    psi[n] = flip ? -init.psi0 : init.psi0;
                }
                break;
            }
            const Complex amplitude = (init.psi1 - init.psi0 * std::cos(xi)) / std::sin(xi);
            for (std::size_t n = 0; n < d; ++n) {
                const double phase = phase_of(static_cast<std::int64_t>(n), steps, d);
                psi[n] = amplitude * std::sin(phase) + init.psi0 * std::cos(phase);
            }
            break;
        }
        case CaseKind::QuarterPeriod:
            for (std::size_t n = 0; n < d; ++n) {
                const double phase = phase_of(static_cast<std::int64_t>(n), steps, d);
                psi[n] = std::numbers::sqrt2 * init.psi0 * std::sin(phase + 0.25 * kPi);
            }
            break;
        case CaseKind::HalfPeriod: {
            require_constraint(std::abs(init.psi0) <= kConstraintTolerance * scale,
                               "half-period case requires psi(theta_0) = 0");
            if (steps == period_half) {
                // sin(n xi)/sin(xi) -> (-1)^(n+1) n as xi -> pi
                for (std::size_t n = 0; n < d; ++n) {
                    const double sign = n % 2 == 0 ? -1.0 : 1.0;
                    psi[n] = sign * static_cast<double>(n) * init.psi1;
                }
                break;
            }
            const double denominator = std::sin(xi);
            for (std::size_t n = 0; n < d; ++n) {
                psi[n] = init.psi1 * std::sin(phase_of(static_cast<std::int64_t>(n), steps, d)) / denominator;
            }
            break;
        }
        case CaseKind::ThreeQuarterPeriod:
            for (std::size_t n = 0; n < d; ++n) {
                const double phase = phase_of(static_cast<std::int64_t>(n), steps, d);
                psi[n] = std::numbers::sqrt2 * init.psi0 * std::cos(phase + 0.25 * kPi);
            }
            break;
    }
    return psi;
}

std::vector<double> case_energy_multiset(CaseKind kind, const Lattice& lattice, const PhysicalParams& params) {
    const std::size_t d = lattice.dimension();
    std::vector<double> energies;
    energies.reserve(d);
    for (std::size_t n = 0; n < d; ++n) {
        energies.push_back(case_energy(QuantizationCase(kind, static_cast<std::int64_t>(n)), lattice, params));
    }
    std::sort(energies.begin(), energies.end());
    return energies;
}

std::vector<LevelRecord> case_levels(CaseKind kind, const Lattice& lattice, const PhysicalParams& params) {
    const std::size_t d = lattice.dimension();
    const double bound = energy_bound(lattice, params);
    // folded steps -> index into levels; ascending steps means ascending energy.
    std::map<std::int64_t, LevelRecord> by_steps;
    for (std::size_t n = 0; n < d; ++n) {
        const QuantizationCase qcase(kind, static_cast<std::int64_t>(n));
        const std::int64_t key = qcase.folded_quarter_steps(d);
        auto it = by_steps.find(key);
        if (it != by_steps.end()) {
            ++it->second.multiplicity;
            continue;
        }
        const SpectralAngle xi = qcase.principal_xi(d);
        by_steps.emplace(key, LevelRecord{qcase, xi.value(), energy_from_xi(xi, lattice, params), bound, 1,
                                          qcase.folded(d)});
    }
    std::vector<LevelRecord> levels;
    levels.reserve(by_steps.size());
    for (auto& [key, level] : by_steps) {
        levels.push_back(level);
    }
    return levels;
}

std::vector<EigenSolution> diagonalize(const ComplexMatrix& h) {
    const double scale = std::max(1.0, h.entries().cwiseAbs().maxCoeff());
    const double asymmetry = hermiticity_residual(h);
    if (asymmetry > kHermitianTolerance * scale) {
        throw PreconditionError("diagonalize: matrix is not Hermitian (max|H - H^dagger| = " +
                                std::to_string(asymmetry) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: eigensolver did not converge");
    }
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    std::vector<EigenSolution> out;
    out.reserve(h.dim());
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        EigenSolution s;
        s.energy = values(k);
        s.wavefunction.assign(vectors.col(k).data(), vectors.col(k).data() + vectors.rows());
        s.provenance = Provenance::Oracle;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<EigenSolution> circulant_spectrum(const ComplexMatrix& h) {
    const std::size_t d = h.dim();
    const auto& m = h.entries();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto src = static_cast<Eigen::Index>(wrap_index(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j), d));
            if (std::abs(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - m(src, 0)) >
                kHermitianTolerance * scale) {
                throw PreconditionError("circulant_spectrum: matrix is not circulant");
            }
        }
    }
    if (hermiticity_residual(h) > kHermitianTolerance * scale) {
        throw PreconditionError("circulant_spectrum: matrix is not Hermitian");
    }

    const auto dd = static_cast<double>(d);
    const double norm = 1.0 / std::sqrt(dd);
    std::vector<EigenSolution> out;
    out.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
        // lambda_k = sum_j c_j exp(-2 pi i j k / d), eigenvector f_k(j) = exp(2 pi i j k / d)/sqrt(d)
        Complex lambda{};
        EigenSolution s;
        s.wavefunction.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            const double angle = kTwoPi * static_cast<double>((j * k) % d) / dd;
            lambda += m(static_cast<Eigen::Index>(j), 0) * std::polar(1.0, -angle);
            s.wavefunction[j] = std::polar(norm, angle);
        }
        s.energy = lambda.real();
        s.provenance = Provenance::CirculantOracle;
        out.push_back(std::move(s));
    }
    return out;
}

double spectrum_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        worst = std::max(worst, std::fabs(sa[i] - sb[i]));
    }
    return worst;
}

double matrix_norm_inf(const ComplexMatrix& m) { return m.entries().cwiseAbs().rowwise().sum().maxCoeff(); }

SchrodingerResidual schrodinger_residual(const ComplexMatrix& h, std::span<const Complex> psi, double energy) {
    const std::size_t d = h.dim();
    if (psi.size() != d) {
        throw ShapeError("schrodinger_residual: vector length does not match matrix dimension");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        v(static_cast<Eigen::Index>(i)) = psi[i];
    }
    const double length = v.norm();
    if (length == 0.0) {
        throw DomainError("schrodinger_residual: zero vector");
    }
    v /= length;
    const Eigen::VectorXcd r = h.entries() * v - energy * v;
    const double scale = std::max(matrix_norm_inf(h), std::numeric_limits<double>::min());

    SchrodingerResidual out;
    out.full = r.norm() / scale;
    for (std::size_t i = 0; i < d; ++i) {
        const double value = std::abs(r(static_cast<Eigen::Index>(i))) / scale;
        if (i == 0 || i + 1 == d) {
            out.wrap = std::max(out.wrap, value);
        } else {
            out.interior = std::max(out.interior, value);
        }
    }
    return out;
}

}  // namespace fqcircle
