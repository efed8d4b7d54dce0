#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fqcircle/deformed_arithmetic.hpp"

namespace fqcircle {

inline constexpr std::size_t kMinDimension = 2;
inline constexpr std::size_t kMaxDimension = 4096;

/// d angles theta_n = 2 pi (n/d)^(1/alpha) on the circle, with constant
/// alpha-difference sigma = 2 pi / d^(1/alpha) between neighbours.
///
/// Immutable once built; operator and spectral builders take it by const
/// reference.
class Lattice {
  public:
    [[nodiscard]] std::size_t dimension() const noexcept { return angles_.size(); }
    [[nodiscard]] const DeformationParameter& alpha() const noexcept { return alpha_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    /// sigma^alpha = (2 pi)^alpha / d, the denominator of the ladder operators.
    [[nodiscard]] double sigma_pow_alpha() const noexcept { return sigma_pow_alpha_; }
    [[nodiscard]] double sigma_pow_2alpha() const noexcept { return sigma_pow_alpha_ * sigma_pow_alpha_; }
    [[nodiscard]] std::span<const double> angles() const noexcept { return angles_; }
    [[nodiscard]] double angle(std::size_t n) const { return angles_.at(n); }

  private:
    friend Lattice build_lattice(std::size_t d, const DeformationParameter& alpha);
    Lattice(DeformationParameter alpha, double sigma, std::vector<double> angles);

    DeformationParameter alpha_;
    double sigma_;
    double sigma_pow_alpha_;
    std::vector<double> angles_;
};

/// Throws ConfigurationError for d outside [kMinDimension, kMaxDimension].
Lattice build_lattice(std::size_t d, const DeformationParameter& alpha);

/// n mod d in [0, d), also for negative n.
std::size_t wrap_index(std::int64_t n, std::size_t d);

}  // namespace fqcircle
