// Python bindings for the fqcircle core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fqcircle/deformed_arithmetic.hpp"
#include "fqcircle/errors.hpp"
#include "fqcircle/lattice.hpp"
#include "fqcircle/operators.hpp"
#include "fqcircle/serialization.hpp"
#include "fqcircle/spectral.hpp"
#include "fqcircle/verification.hpp"
#include "fqcircle/version.hpp"

namespace py = pybind11;
using namespace fqcircle;

namespace {

ComplexMatrix wrap(const Eigen::MatrixXcd& m) { return {m, OperatorRole::Derived}; }

py::object json_to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(fqcircle, m) {
    m.doc() = "Finite quantum mechanics on a circle with alpha-uniformly distributed points";
    m.attr("__version__") = kVersion;

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_OverflowError);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ValueError);
    py::register_exception<DegenerateCaseError>(m, "DegenerateCaseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    // deformed arithmetic
    m.def("alpha_add", [](double a, double b, double alpha) { return alpha_add(a, b, DeformationParameter(alpha)); },
          py::arg("a"), py::arg("b"), py::arg("alpha"));
    m.def("alpha_sub", [](double a, double b, double alpha) { return alpha_sub(a, b, DeformationParameter(alpha)); },
          py::arg("a"), py::arg("b"), py::arg("alpha"));
    m.def("alpha_mul", &alpha_mul, py::arg("a"), py::arg("b"));
    m.def("alpha_div", &alpha_div, py::arg("a"), py::arg("b"));
    m.def("alpha_exp", [](double z, double alpha) { return alpha_exp(z, DeformationParameter(alpha)); },
          py::arg("z"), py::arg("alpha"));
    m.def("alpha_exp_imag", [](double y, double alpha) { return alpha_exp_imag(y, DeformationParameter(alpha)); },
          py::arg("y"), py::arg("alpha"));

    // lattice
    py::class_<Lattice>(m, "Lattice")
        .def_property_readonly("d", &Lattice::dimension)
        .def_property_readonly("alpha", [](const Lattice& l) { return l.alpha().value(); })
        .def_property_readonly("sigma", &Lattice::sigma)
        .def_property_readonly("angles",
                               [](const Lattice& l) { return std::vector<double>(l.angles().begin(), l.angles().end()); })
        .def("to_json", [](const Lattice& l) { return json_to_python(lattice_to_json(l)); });
    m.def("build_lattice", [](std::size_t d, double alpha) { return build_lattice(d, DeformationParameter(alpha)); },
          py::arg("d"), py::arg("alpha"));
    m.def("wrap_index", &wrap_index, py::arg("n"), py::arg("d"));

    // operators
    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<double, double, double>(), py::arg("hbar") = 1.0, py::arg("mass") = 1.0, py::arg("radius") = 1.0)
        .def_property_readonly("hbar", &PhysicalParams::hbar)
        .def_property_readonly("mass", &PhysicalParams::mass)
        .def_property_readonly("radius", &PhysicalParams::radius);

    m.def("angle_operator", [](const Lattice& l) { return angle_operator(l).entries(); });
    m.def("translation_u", [](std::size_t d) { return translation_u(d).entries(); });
    m.def("v_operator", [](const Lattice& l) { return v_operator(l).entries(); });
    m.def("q_factor", &q_factor, py::arg("d"));
    m.def("l_plus", [](const Lattice& l, const PhysicalParams& p) { return l_plus(l, p).entries(); },
          py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def("l_minus", [](const Lattice& l, const PhysicalParams& p) { return l_minus(l, p).entries(); },
          py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def("hamiltonian_free", [](const Lattice& l, const PhysicalParams& p) { return hamiltonian_free(l, p).entries(); },
          py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def(
        "hamiltonian_with_potential",
        [](const Lattice& l, const PhysicalParams& p, const std::vector<double>& v) {
            return hamiltonian_with_potential(l, p, v).entries();
        },
        py::arg("lattice"), py::arg("params"), py::arg("potential"));
    m.def(
        "weyl_relation_residual",
        [](const Eigen::MatrixXcd& v, const Eigen::MatrixXcd& u, Complex q) {
            return weyl_relation_residual(wrap(v), wrap(u), q);
        },
        py::arg("V"), py::arg("U"), py::arg("q"));

    // spectral
    py::enum_<CaseKind>(m, "CaseKind")
        .value("FullPeriod", CaseKind::FullPeriod)
        .value("QuarterPeriod", CaseKind::QuarterPeriod)
        .value("HalfPeriod", CaseKind::HalfPeriod)
        .value("ThreeQuarterPeriod", CaseKind::ThreeQuarterPeriod);

    m.def("energy_bound", &energy_bound, py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def(
        "xi_from_energy",
        [](double e, const Lattice& l, const PhysicalParams& p) { return xi_from_energy(e, l, p).value(); },
        py::arg("energy"), py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def(
        "energy_from_xi",
        [](double xi, const Lattice& l, const PhysicalParams& p) { return energy_from_xi(SpectralAngle(xi), l, p); },
        py::arg("xi"), py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def(
        "propagate_recurrence",
        [](Complex psi0, Complex psi1, double e, const Lattice& l, const PhysicalParams& p) {
            return propagate_recurrence(RecurrenceInit(psi0, psi1), e, l, p);
        },
        py::arg("psi0"), py::arg("psi1"), py::arg("energy"), py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def(
        "wavefunction_sample",
        [](Complex psi0, Complex psi1, double xi, std::int64_t n) {
            return wavefunction_sample(RecurrenceInit(psi0, psi1), SpectralAngle(xi), n);
        },
        py::arg("psi0"), py::arg("psi1"), py::arg("xi"), py::arg("n"));
    m.def(
        "case_energy",
        [](CaseKind kind, std::int64_t n, const Lattice& l, const PhysicalParams& p) {
            return case_energy(QuantizationCase(kind, n), l, p);
        },
        py::arg("kind"), py::arg("N"), py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def(
        "case_wavefunction",
        [](CaseKind kind, std::int64_t n, const Lattice& l, Complex psi0, Complex psi1) {
            return case_wavefunction(QuantizationCase(kind, n), l, RecurrenceInit(psi0, psi1));
        },
        py::arg("kind"), py::arg("N"), py::arg("lattice"), py::arg("psi0"), py::arg("psi1"));
    m.def(
        "case_levels",
        [](CaseKind kind, const Lattice& l, const PhysicalParams& p) {
            py::list out;
            for (const auto& level : case_levels(kind, l, p)) {
                out.append(json_to_python(level_to_json(level, l, p)));
            }
            return out;
        },
        py::arg("kind"), py::arg("lattice"), py::arg("params") = PhysicalParams());
    m.def(
        "diagonalize",
        [](const Eigen::MatrixXcd& h) {
            const auto solutions = diagonalize(wrap(h));
            Eigen::VectorXd values(static_cast<Eigen::Index>(solutions.size()));
            Eigen::MatrixXcd vectors(h.rows(), h.cols());
            for (std::size_t k = 0; k < solutions.size(); ++k) {
                const auto col = static_cast<Eigen::Index>(k);
                values(col) = solutions[k].energy;
                for (Eigen::Index i = 0; i < h.rows(); ++i) {
                    vectors(i, col) = solutions[k].wavefunction[static_cast<std::size_t>(i)];
                }
            }
            return py::make_tuple(values, vectors);
        },
        py::arg("H"), "Ascending eigenvalues and orthonormal eigenvectors (columns).");
    m.def(
        "circulant_spectrum",
        [](const Eigen::MatrixXcd& h) {
            std::vector<double> values;
            for (const auto& s : circulant_spectrum(wrap(h))) {
                values.push_back(s.energy);
            }
            return values;
        },
        py::arg("H"), "Eigenvalues of a circulant Hermitian matrix, ordered by Fourier mode.");

    // verification
    m.def(
        "run_all_checks",
        [](const std::vector<std::pair<std::size_t, double>>& grid, const PhysicalParams& p) {
            std::vector<GridPoint> points;
            for (const auto& [d, alpha] : grid) {
                points.push_back({d, alpha});
            }
            return json_to_python(report_to_json(run_all_checks(points, p)));
        },
        py::arg("grid"), py::arg("params") = PhysicalParams(), "Verification report as a dict.");
    m.def("default_grid", [] {
        std::vector<std::pair<std::size_t, double>> out;
        for (const auto& p : default_grid()) {
            out.emplace_back(p.d, p.alpha);
        }
        return out;
    });
}
