#pragma once

#include <complex>

namespace fqcircle {

/// Positive real deformation parameter alpha. alpha == 1 is ordinary arithmetic.
class DeformationParameter {
  public:
    /// Throws DomainError unless alpha is finite and strictly positive.
    explicit DeformationParameter(double alpha);

    [[nodiscard]] double value() const noexcept { return alpha_; }
    [[nodiscard]] bool undeformed() const noexcept { return alpha_ == 1.0; }

    friend bool operator==(const DeformationParameter&, const DeformationParameter&) = default;

  private:
    double alpha_;
};

/// Signed power sign(x)|x|^p, with spow(0, p) = 0.
double spow(double x, double p) noexcept;

/// Conjugating map x |-> x|x|^(alpha-1). alpha-addition is ordinary addition
/// in this coordinate.
double to_linear(double x, const DeformationParameter& alpha) noexcept;
double from_linear(double u, const DeformationParameter& alpha) noexcept;

/// a (+)_alpha b. Exact identity for a zero operand. When the inner sum
/// a|a|^(alpha-1) + b|b|^(alpha-1) cancels to 0 the result is 0.
double alpha_add(double a, double b, const DeformationParameter& alpha);

/// a (-)_alpha b, the inverse of alpha_add in its first argument.
double alpha_sub(double a, double b, const DeformationParameter& alpha);

/// The deformed product and quotient are the ordinary ones.
double alpha_mul(double a, double b);
double alpha_div(double a, double b);

/// e_alpha(z) = exp(|z|^(alpha-1) z). Throws RangeError when the result would
/// overflow DBL_MAX or underflow to zero.
double alpha_exp(double z, const DeformationParameter& alpha);

/// e_alpha(i y) = exp(i y|y|^(alpha-1)); unit modulus.
std::complex<double> alpha_exp_imag(double y, const DeformationParameter& alpha);

}  // namespace fqcircle
