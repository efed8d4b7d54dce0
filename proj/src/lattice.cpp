#include "fqcircle/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "fqcircle/errors.hpp"

namespace fqcircle {

Lattice::Lattice(DeformationParameter alpha, double sigma, std::vector<double> angles)
    : alpha_(alpha),
      sigma_(sigma),
      sigma_pow_alpha_(std::pow(sigma, alpha.value())),
      angles_(std::move(angles)) {}

Lattice build_lattice(std::size_t d, const DeformationParameter& alpha) {
    if (d < kMinDimension || d > kMaxDimension) {
        throw ConfigurationError("lattice dimension d must lie in [" + std::to_string(kMinDimension) +
                                 ", " + std::to_string(kMaxDimension) + "], got " +
                                 std::to_string(d));
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double inv_alpha = 1.0 / alpha.value();
    const auto dd = static_cast<double>(d);

    std::vector<double> angles(d);
    angles[0] = 0.0;
    for (std::size_t n = 1; n < d; ++n) {
        const double ratio = static_cast<double>(n) / dd;
        angles[n] = two_pi * (alpha.undeformed() ? ratio : std::pow(ratio, inv_alpha));
    }
    const double sigma = two_pi / (alpha.undeformed() ? dd : std::pow(dd, inv_alpha));
    return Lattice(alpha, sigma, std::move(angles));
}

std::size_t wrap_index(std::int64_t n, std::size_t d) {
    if (d == 0) {
        throw ConfigurationError("wrap_index: d must be positive");
    }
    const auto m = static_cast<std::int64_t>(d);
    const std::int64_t r = n % m;
    return static_cast<std::size_t>(r < 0 ? r + m : r);
}

}  // namespace fqcircle
