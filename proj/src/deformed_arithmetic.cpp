#include "fqcircle/deformed_arithmetic.hpp"

#include <cfloat>
#include <cmath>
#include <string>

#include "fqcircle/errors.hpp"

namespace fqcircle {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
}

}  // namespace

DeformationParameter::DeformationParameter(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0)) {
        throw DomainError("deformation parameter alpha must be finite and > 0, got " +
                          std::to_string(alpha));
    }
}

double spow(double x, double p) noexcept {
    if (x == 0.0) {
        return 0.0;
    }
    const double mag = std::pow(std::fabs(x), p);
    return x < 0.0 ? -mag : mag;
}

double to_linear(double x, const DeformationParameter& alpha) noexcept {
    return alpha.undeformed() ? x : spow(x, alpha.value());
}

double from_linear(double u, const DeformationParameter& alpha) noexcept {
    return alpha.undeformed() ? u : spow(u, 1.0 / alpha.value());
}

double alpha_add(double a, double b, const DeformationParameter& alpha) {
    require_finite(a, "alpha_add");
    require_finite(b, "alpha_add");
    if (b == 0.0) {
        return a;
    }
    if (a == 0.0) {
        return b;
    }
    // |s|^(1/alpha - 1) s == spow(s, 1/alpha); an inner sum that cancels (or
    // underflows) to zero maps to zero.
    const double inner = to_linear(a, alpha) + to_linear(b, alpha);
    return from_linear(inner, alpha);
}

double alpha_sub(double a, double b, const DeformationParameter& alpha) {
    require_finite(a, "alpha_sub");
    require_finite(b, "alpha_sub");
    if (b == 0.0) {
        return a;
    }
    if (a == b) {
        return 0.0;
    }
    const double inner = to_linear(a, alpha) - to_linear(b, alpha);
    return from_linear(inner, alpha);
}

double alpha_mul(double a, double b) { return a * b; }

double alpha_div(double a, double b) {
    if (b == 0.0) {
        throw DomainError("alpha_div: division by zero");
    }
    return a / b;
}

double alpha_exp(double z, const DeformationParameter& alpha) {
    require_finite(z, "alpha_exp");
    const double exponent = to_linear(z, alpha);
    static const double kMaxExponent = std::log(DBL_MAX);
    if (exponent > kMaxExponent) {
        throw RangeError("alpha_exp: exponent " + std::to_string(exponent) +
                         " exceeds log(DBL_MAX); result would saturate at DBL_MAX");
    }
    const double value = std::exp(exponent);
    if (!(value > 0.0)) {
        throw RangeError("alpha_exp: exponent " + std::to_string(exponent) +
                         " underflows; result would saturate at 0");
    }
    return value;
}

std::complex<double> alpha_exp_imag(double y, const DeformationParameter& alpha) {
    require_finite(y, "alpha_exp_imag");
    return std::polar(1.0, to_linear(y, alpha));
}

}  // namespace fqcircle
