#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fqcircle/lattice.hpp"

namespace fqcircle {

using Complex = std::complex<double>;

enum class OperatorRole { Angle, Translation, V, LPlus, LMinus, Hamiltonian, Derived };

std::string_view to_string(OperatorRole role) noexcept;

/// Dense dim x dim complex matrix in the angle eigenbasis. Column n is the
/// image of |n>. Carries the role of the operator it was built as.
class ComplexMatrix {
  public:
    ComplexMatrix(Eigen::MatrixXcd entries, OperatorRole role);

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    [[nodiscard]] OperatorRole role() const noexcept { return role_; }
    [[nodiscard]] const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    [[nodiscard]] ComplexMatrix adjoint() const;

  private:
    Eigen::MatrixXcd entries_;
    OperatorRole role_;
};

/// hbar, mass and circle radius; all strictly positive.
class PhysicalParams {
  public:
    PhysicalParams(double hbar = 1.0, double mass = 1.0, double radius = 1.0);

    [[nodiscard]] double hbar() const noexcept { return hbar_; }
    [[nodiscard]] double mass() const noexcept { return mass_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }
    /// Moment of inertia m R^2.
    [[nodiscard]] double inertia() const noexcept { return mass_ * radius_ * radius_; }
    /// hbar^2 / (m R^2), the natural energy unit.
    [[nodiscard]] double energy_unit() const noexcept { return hbar_ * hbar_ / inertia(); }

  private:
    double hbar_;
    double mass_;
    double radius_;
};

// Matrix helpers shared by the checks. All throw ShapeError on mismatch.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t exponent);
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_difference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
/// max|a - b| / max(1, max|b|).
double scaled_difference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
/// max|M - M^dagger|.
double hermiticity_residual(const ComplexMatrix& m);

/// Diagonal angle operator theta_hat |n> = theta_n |n>.
ComplexMatrix angle_operator(const Lattice& lattice);

/// Cyclic translation U|n> = |n-1>, |n+d> == |n>.
ComplexMatrix translation_u(std::size_t d);

/// Phase constant (2 pi)^(1/alpha - 1) that makes V^d = I.
double phase_xi(const DeformationParameter& alpha) noexcept;

/// V = e_alpha(i phase_xi theta_hat); entry (n, n) equals exp(2 pi i n / d).
ComplexMatrix v_operator(const Lattice& lattice);

/// q = exp(2 pi i / d).
Complex q_factor(std::size_t d);

/// max(max|V U^dagger - q U^dagger V|, max|V U - q^-1 U V|).
double weyl_relation_residual(const ComplexMatrix& v, const ComplexMatrix& u, Complex q);

/// Residuals of one deformed relation, split into interior columns and the
/// columns whose image crosses the theta_d == theta_0 seam.
struct RelationResidual {
    double interior_max = 0.0;
    double seam_max = 0.0;
    std::vector<std::size_t> seam_columns;
};

/// Coefficient-level check of the deformed commutators between theta_hat and U.
///   forward:       theta U (-) U theta = -sigma U
///   adjoint:       theta U^dag (-) U^dag theta = sigma U^dag
///   power_adjoint: theta (U^dag)^r = (U^dag)^r (theta (+) r^(1/alpha) sigma)
///   power_forward: theta U^r = U^r (theta (-) r^(1/alpha) sigma)
/// (+)/(-) act on the scalar coefficient of each basis image. The commutator
/// residuals are absolute; the power-law residuals are measured in the linear
/// coordinate x|x|^(alpha-1), relative to max(1, |theta_n|^alpha, shift^alpha).
struct CommutatorReport {
    std::size_t r = 1;
    double sigma = 0.0;
    double shift = 0.0;  // r^(1/alpha) sigma
    RelationResidual forward;
    RelationResidual adjoint;
    RelationResidual power_adjoint;
    RelationResidual power_forward;

    [[nodiscard]] double interior_max() const noexcept;
    [[nodiscard]] double seam_max() const noexcept;
};

CommutatorReport deformed_commutator_check(const ComplexMatrix& theta, const ComplexMatrix& u,
                                           const Lattice& lattice, std::size_t r);

/// L+ = (hbar/i)(U - I)/sigma^alpha.
ComplexMatrix l_plus(const Lattice& lattice, const PhysicalParams& params);
/// L- = (hbar/i)(I - U^-1)/sigma^alpha. L+^dagger == L- entrywise.
ComplexMatrix l_minus(const Lattice& lattice, const PhysicalParams& params);

/// Free Hamiltonian -hbar^2/(2 m R^2 sigma^(2 alpha)) (U + U^-1 - 2I).
ComplexMatrix hamiltonian_free(const Lattice& lattice, const PhysicalParams& params);

/// hamiltonian_free plus diag(potential); potential is sampled at theta_n.
ComplexMatrix hamiltonian_with_potential(const Lattice& lattice, const PhysicalParams& params,
                                         std::span<const double> potential);

}  // namespace fqcircle
