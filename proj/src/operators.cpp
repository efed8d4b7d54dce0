#include "fqcircle/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "fqcircle/errors.hpp"

namespace fqcircle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_shape(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(what) + ": dimension mismatch (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
    }
}

// Row index of the single nonzero entry of a permutation column.
Eigen::Index image_row(const Eigen::MatrixXcd& perm, Eigen::Index col) {
    Eigen::Index row = 0;
    perm.col(col).cwiseAbs().maxCoeff(&row);
    return row;
}

}  // namespace

std::string_view to_string(OperatorRole role) noexcept {
    switch (role) {
        case OperatorRole::Angle:
            return "angle";
        case OperatorRole::Translation:
            return "translation";
        case OperatorRole::V:
            return "v";
        case OperatorRole::LPlus:
            return "l_plus";
        case OperatorRole::LMinus:
            return "l_minus";
        case OperatorRole::Hamiltonian:
            return "hamiltonian";
        case OperatorRole::Derived:
            return "derived";
    }
    return "derived";
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd entries, OperatorRole role)
    : entries_(std::move(entries)), role_(role) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw ShapeError("ComplexMatrix must be square and non-empty");
    }
}

ComplexMatrix ComplexMatrix::adjoint() const { return {entries_.adjoint(), OperatorRole::Derived}; }

PhysicalParams::PhysicalParams(double hbar, double mass, double radius)
    : hbar_(hbar), mass_(mass), radius_(radius) {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(hbar) || !positive(mass) || !positive(radius)) {
        throw DomainError("physical parameters hbar, mass, radius must be finite and > 0");
    }
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a.entries(), b.entries(), "multiply");
    return {a.entries() * b.entries(), OperatorRole::Derived};
}

ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t exponent) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd base = a.entries();
    while (exponent > 0) {
        if (exponent & 1U) {
            result = result * base;
        }
        exponent >>= 1U;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return {std::move(result), OperatorRole::Derived};
}

double max_abs_difference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    require_same_shape(a, b, "max_abs_difference");
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    return max_abs_difference(a.entries(), b.entries());
}

double scaled_difference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const double diff = max_abs_difference(a, b);
    return diff / std::max(1.0, b.cwiseAbs().maxCoeff());
}

double hermiticity_residual(const ComplexMatrix& m) {
    return (m.entries() - m.entries().adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix angle_operator(const Lattice& lattice) {
    const auto n = static_cast<Eigen::Index>(lattice.dimension());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    const auto angles = lattice.angles();
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = angles[static_cast<std::size_t>(i)];
    }
    return {std::move(m), OperatorRole::Angle};
}

ComplexMatrix translation_u(std::size_t d) {
    if (d < kMinDimension) {
        throw ConfigurationError("translation_u: d must be >= 2");
    }
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t col = 0; col < d; ++col) {
        const auto row = wrap_index(static_cast<std::int64_t>(col) - 1, d);
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    }
    return {std::move(m), OperatorRole::Translation};
}

double phase_xi(const DeformationParameter& alpha) noexcept {
    return alpha.undeformed() ? 1.0 : std::pow(kTwoPi, 1.0 / alpha.value() - 1.0);
}

ComplexMatrix v_operator(const Lattice& lattice) {
    const auto n = static_cast<Eigen::Index>(lattice.dimension());
    const double xi = phase_xi(lattice.alpha());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    const auto angles = lattice.angles();
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = alpha_exp_imag(xi * angles[static_cast<std::size_t>(i)], lattice.alpha());
    }
    return {std::move(m), OperatorRole::V};
}

Complex q_factor(std::size_t d) {
    if (d < kMinDimension) {
        throw ConfigurationError("q_factor: d must be >= 2");
    }
    return std::polar(1.0, kTwoPi / static_cast<double>(d));
}

double weyl_relation_residual(const ComplexMatrix& v, const ComplexMatrix& u, Complex q) {
    require_same_shape(v.entries(), u.entries(), "weyl_relation_residual");
    const Eigen::MatrixXcd& V = v.entries();
    const Eigen::MatrixXcd& U = u.entries();
    const Eigen::MatrixXcd Ud = U.adjoint();
    const double adjoint_form = ((V * Ud) - q * (Ud * V)).cwiseAbs().maxCoeff();
    const double direct_form = ((V * U) - (1.0 / q) * (U * V)).cwiseAbs().maxCoeff();
    return std::max(adjoint_form, direct_form);
}

double CommutatorReport::interior_max() const noexcept {
    return std::max({forward.interior_max, adjoint.interior_max, power_adjoint.interior_max,
                     power_forward.interior_max});
}

double CommutatorReport::seam_max() const noexcept {
    return std::max({forward.seam_max, adjoint.seam_max, power_adjoint.seam_max, power_forward.seam_max});
}

CommutatorReport deformed_commutator_check(const ComplexMatrix& theta, const ComplexMatrix& u,
                                           const Lattice& lattice, std::size_t r) {
    if (r == 0) {
        throw DomainError("deformed_commutator_check: r must be >= 1");
    }
    const std::size_t d = lattice.dimension();
    if (theta.dim() != d || u.dim() != d) {
        throw ShapeError("deformed_commutator_check: operator dimension does not match lattice");
    }
    const auto& alpha = lattice.alpha();

    CommutatorReport report;
    report.r = r;
    report.sigma = lattice.sigma();
    report.shift = from_linear(static_cast<double>(r), alpha) * lattice.sigma();

    const Eigen::MatrixXcd& T = theta.entries();
    const Eigen::MatrixXcd U = u.entries();
    const Eigen::MatrixXcd Ud = U.adjoint();
    const Eigen::MatrixXcd Ur = matrix_power(u, r).entries();
    const Eigen::MatrixXcd Udr = Ur.adjoint();

    // Visits each column, extracting the coefficients of (theta P)|n> and
    // (P theta)|n> on the basis vector P|n>.
    auto scan = [&](const Eigen::MatrixXcd& perm, bool moves_up, std::size_t step, auto&& residual_of,
                    RelationResidual& out) {
        const Eigen::MatrixXcd lhs = T * perm;
        const Eigen::MatrixXcd rhs = perm * T;
        for (std::size_t n = 0; n < d; ++n) {
            const auto col = static_cast<Eigen::Index>(n);
            const Eigen::Index row = image_row(perm, col);
            const double residual = residual_of(lhs(row, col).real(), rhs(row, col).real(), perm(row, col).real());
            const bool crosses_seam = moves_up ? n + step >= d : n < step;
            if (crosses_seam) {
                out.seam_columns.push_back(n);
                out.seam_max = std::max(out.seam_max, residual);
            } else {
                out.interior_max = std::max(out.interior_max, residual);
            }
        }
    };

    const double sigma = lattice.sigma();
    const double shift = report.shift;
    scan(U, false, 1,
         [&](double a, double b, double c) { return std::fabs(alpha_sub(a, b, alpha) + sigma * c); },
         report.forward);
    scan(Ud, true, 1,
         [&](double a, double b, double c) { return std::fabs(alpha_sub(a, b, alpha) - sigma * c); },
         report.adjoint);
    // The power laws compare in the linear coordinate x|x|^(alpha-1): theta_n (-) shift
    // lands on theta_0 = 0 for n = r, where the inverse map amplifies rounding.
    const double shift_linear = to_linear(shift, alpha);
    auto linear_gap = [&](double a, double expected, double b) {
        const double scale = std::max({1.0, std::fabs(to_linear(b, alpha)), std::fabs(shift_linear)});
        return std::fabs(to_linear(a, alpha) - to_linear(expected, alpha)) / scale;
    };
    scan(Udr, true, r, [&](double a, double b, double) { return linear_gap(a, alpha_add(b, shift, alpha), b); },
         report.power_adjoint);
    scan(Ur, false, r, [&](double a, double b, double) { return linear_gap(a, alpha_sub(b, shift, alpha), b); },
         report.power_forward);
    return report;
}

ComplexMatrix l_plus(const Lattice& lattice, const PhysicalParams& params) {
    const auto n = static_cast<Eigen::Index>(lattice.dimension());
    const Complex prefactor(0.0, -params.hbar() / lattice.sigma_pow_alpha());
    const Eigen::MatrixXcd U = translation_u(lattice.dimension()).entries();
    Eigen::MatrixXcd m = prefactor * (U - Eigen::MatrixXcd::Identity(n, n));
    return {std::move(m), OperatorRole::LPlus};
}

ComplexMatrix l_minus(const Lattice& lattice, const PhysicalParams& params) {
    const auto n = static_cast<Eigen::Index>(lattice.dimension());
    const Complex prefactor(0.0, -params.hbar() / lattice.sigma_pow_alpha());
    const Eigen::MatrixXcd U = translation_u(lattice.dimension()).entries();
    Eigen::MatrixXcd m = prefactor * (Eigen::MatrixXcd::Identity(n, n) - U.adjoint());
    return {std::move(m), OperatorRole::LMinus};
}

ComplexMatrix hamiltonian_free(const Lattice& lattice, const PhysicalParams& params) {
    const std::size_t d = lattice.dimension();
    const auto n = static_cast<Eigen::Index>(d);
    const double coupling = params.hbar() * params.hbar() / (2.0 * params.inertia() * lattice.sigma_pow_2alpha());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t col = 0; col < d; ++col) {
        const auto c = static_cast<Eigen::Index>(col);
        const auto up = static_cast<Eigen::Index>(wrap_index(static_cast<std::int64_t>(col) - 1, d));
        const auto down = static_cast<Eigen::Index>(wrap_index(static_cast<std::int64_t>(col) + 1, d));
        m(c, c) += 2.0 * coupling;
        m(up, c) -= coupling;
        m(down, c) -= coupling;
    }
    return {std::move(m), OperatorRole::Hamiltonian};
}

ComplexMatrix hamiltonian_with_potential(const Lattice& lattice, const PhysicalParams& params,
                                         std::span<const double> potential) {
    if (potential.size() != lattice.dimension()) {
        throw ShapeError("hamiltonian_with_potential: potential has " + std::to_string(potential.size()) +
                         " samples, lattice has " + std::to_string(lattice.dimension()));
    }
    Eigen::MatrixXcd m = hamiltonian_free(lattice, params).entries();
    for (std::size_t i = 0; i < potential.size(); ++i) {
        if (!std::isfinite(potential[i])) {
            throw DomainError("hamiltonian_with_potential: non-finite potential sample");
        }
        const auto k = static_cast<Eigen::Index>(i);
        m(k, k) += potential[i];
    }
    return {std::move(m), OperatorRole::Hamiltonian};
}

}  // namespace fqcircle
