#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fqcircle/lattice.hpp"
#include "fqcircle/operators.hpp"

namespace fqcircle {

/// Spectral angle xi with cos(xi) = 1 - m R^2 sigma^(2 alpha) E / hbar^2,
/// on the principal branch [0, pi].
class SpectralAngle {
  public:
    explicit SpectralAngle(double xi);
    [[nodiscard]] double value() const noexcept { return xi_; }
    /// xi is exactly 0 or exactly pi (as a double); sin(xi) must not be divided by.
    [[nodiscard]] bool degenerate() const noexcept;

  private:
    double xi_;
};

/// psi(theta_0), psi(theta_1); not both zero.
struct RecurrenceInit {
    RecurrenceInit(Complex psi0, Complex psi1);
    Complex psi0;
    Complex psi1;
};

enum class CaseKind { FullPeriod, QuarterPeriod, HalfPeriod, ThreeQuarterPeriod };

std::string_view to_string(CaseKind kind) noexcept;
std::optional<CaseKind> case_kind_from_string(std::string_view name) noexcept;

/// d xi = 2 N pi + offset, offset in {0, pi/2, pi, 3pi/2}.
class QuantizationCase {
  public:
    QuantizationCase(CaseKind kind, std::int64_t n);

    [[nodiscard]] CaseKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::int64_t n() const noexcept { return n_; }

    /// xi in units of pi/(2d): 4N + {0,1,2,3}, reduced mod 4d.
    [[nodiscard]] std::int64_t raw_quarter_steps(std::size_t d) const noexcept;
    /// raw_quarter_steps reflected into [0, 2d], i.e. xi into [0, pi].
    [[nodiscard]] std::int64_t folded_quarter_steps(std::size_t d) const noexcept;
    /// (offset + 2 N pi)/d reduced into [0, 2 pi). Used by the wavefunctions.
    [[nodiscard]] double raw_xi(std::size_t d) const noexcept;
    /// Principal-branch xi in [0, pi]. Used by energies.
    [[nodiscard]] SpectralAngle principal_xi(std::size_t d) const;
    /// N had to be folded to land xi on [0, pi].
    [[nodiscard]] bool folded(std::size_t d) const noexcept;

  private:
    CaseKind kind_;
    std::int64_t n_;
};

enum class Provenance { ClosedForm, Oracle, CirculantOracle };

std::string_view to_string(Provenance p) noexcept;

struct EigenSolution {
    double energy = 0.0;
    std::vector<Complex> wavefunction;
    Provenance provenance = Provenance::Oracle;
    std::optional<QuantizationCase> quantization;
};

/// Recurrence psi_{n+1} = (2 - 2 m R^2 sigma^(2 alpha) E / hbar^2) psi_n - psi_{n-1};
/// returns psi_0 .. psi_d (d + 1 samples, the last one is the wrap value).
std::vector<Complex> propagate_recurrence(const RecurrenceInit& init, double energy, const Lattice& lattice,
                                          const PhysicalParams& params);

/// 2 hbar^2 / (m R^2 sigma^(2 alpha)) = 2 (hbar d)^2 / (m R^2 (2 pi)^(2 alpha)).
double energy_bound(const Lattice& lattice, const PhysicalParams& params);

/// Throws DomainError when energy lies outside [0, energy_bound].
SpectralAngle xi_from_energy(double energy, const Lattice& lattice, const PhysicalParams& params);
double energy_from_xi(const SpectralAngle& xi, const Lattice& lattice, const PhysicalParams& params);

/// (1/sin xi)[psi_1 sin(n xi) - psi_0 sin((n-1) xi)]. Throws DegenerateCaseError
/// for xi in {0, pi}; use wavefunction_limit there.
Complex closed_form_wavefunction(const RecurrenceInit& init, const SpectralAngle& xi, std::int64_t n);
/// Equivalent form ((psi_1 - psi_0 cos xi)/sin xi) sin(n xi) + psi_0 cos(n xi).
Complex closed_form_wavefunction_alt(const RecurrenceInit& init, const SpectralAngle& xi, std::int64_t n);
/// Analytic limits: psi_0 + n(psi_1 - psi_0) at xi = 0 and
/// (-1)^n (psi_0 - n(psi_1 + psi_0)) at xi = pi. Throws DomainError otherwise.
Complex wavefunction_limit(const RecurrenceInit& init, const SpectralAngle& xi, std::int64_t n);
/// Dispatches to the closed form or the limit as appropriate.
Complex wavefunction_sample(const RecurrenceInit& init, const SpectralAngle& xi, std::int64_t n);

/// (psi_1 - psi_0 cos xi) sin(d xi) + psi_0 sin xi cos(d xi) - psi_0 sin xi.
/// Vanishes iff psi(theta_d) == psi(theta_0). Takes the raw angle so it can be
/// evaluated for case angles beyond pi.
Complex cyclic_residual(const RecurrenceInit& init, double xi, std::size_t d);
/// Same, with d xi reduced exactly from the case's quarter steps.
Complex cyclic_residual(const RecurrenceInit& init, const QuantizationCase& qcase, std::size_t d);

double case_energy(const QuantizationCase& qcase, const Lattice& lattice, const PhysicalParams& params);

/// The initial data psi_1 forced by the case for a given psi_0; nullopt for
/// HalfPeriod (psi_0 must vanish, psi_1 is free) and for non-degenerate
/// FullPeriod (psi_1 is free).
std::optional<Complex> case_constrained_psi1(const QuantizationCase& qcase, std::size_t d, Complex psi0);

/// Samples n = 0..d-1 of the case's closed-form wavefunction. Throws
/// ConsistencyError when init violates the case constraint.
std::vector<Complex> case_wavefunction(const QuantizationCase& qcase, const Lattice& lattice,
                                       const RecurrenceInit& init);

/// One distinct level of a quantization family.
struct LevelRecord {
    QuantizationCase quantization;
    double xi = 0.0;        // principal branch
    double energy = 0.0;    // raw units
    double bound = 0.0;     // raw units
    std::size_t multiplicity = 1;
    bool folded = false;
};

/// The d energies for N = 0..d-1 (with repeats); for FullPeriod this is the
/// free spectrum as a multiset. Ascending.
std::vector<double> case_energy_multiset(CaseKind kind, const Lattice& lattice, const PhysicalParams& params);

/// Distinct levels of a family over N = 0..d-1, with multiplicities, ascending in energy.
std::vector<LevelRecord> case_levels(CaseKind kind, const Lattice& lattice, const PhysicalParams& params);

/// Dense Hermitian eigendecomposition (ascending). Throws PreconditionError
/// when max|H - H^dagger| > 1e-12 max(1, max|H|).
std::vector<EigenSolution> diagonalize(const ComplexMatrix& h);

/// Spectrum of a circulant matrix from the DFT of its first column, with the
/// Fourier modes as eigenvectors; ordered by mode index k. Throws
/// PreconditionError when h is not circulant.
std::vector<EigenSolution> circulant_spectrum(const ComplexMatrix& h);

/// Multiset comparison: both sorted ascending and compared pairwise.
/// Returns the largest absolute difference (infinity on size mismatch).
double spectrum_distance(std::span<const double> a, std::span<const double> b);

/// max-row-sum norm.
double matrix_norm_inf(const ComplexMatrix& m);

/// Schrodinger residuals of a normalised vector: rows 1..d-2 and the two wrap rows.
struct SchrodingerResidual {
    double interior = 0.0;
    double wrap = 0.0;
    double full = 0.0;  // ||H psi - E psi||_2
};
SchrodingerResidual schrodinger_residual(const ComplexMatrix& h, std::span<const Complex> psi, double energy);

}  // namespace fqcircle
