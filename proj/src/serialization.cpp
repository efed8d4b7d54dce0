#include "fqcircle/serialization.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "fqcircle/errors.hpp"

namespace fqcircle {

namespace {

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

// Oracle eigenvalues may sit a few ulps outside [0, bound].
double oracle_xi(double energy, const Lattice& lattice, const PhysicalParams& params) {
    const double bound = energy_bound(lattice, params);
    return xi_from_energy(std::clamp(energy, 0.0, bound), lattice, params).value();
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

nlohmann::json lattice_to_json(const Lattice& lattice) {
    nlohmann::json angles = nlohmann::json::array();
    for (double a : lattice.angles()) {
        angles.push_back(a);
    }
    return {{"d", lattice.dimension()},
            {"alpha", lattice.alpha().value()},
            {"sigma", lattice.sigma()},
            {"angles", std::move(angles)}};
}

std::string lattice_to_csv(const Lattice& lattice) {
    std::ostringstream out;
    out << "n,theta\n";
    const auto angles = lattice.angles();
    for (std::size_t n = 0; n < angles.size(); ++n) {
        out << n << ',' << format_double(angles[n]) << '\n';
    }
    return out.str();
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return {{"role", std::string(to_string(m.role()))}, {"dim", m.dim()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    const auto dim = j.at("dim").get<std::size_t>();
    const auto& rows = j.at("entries");
    if (rows.size() != dim) {
        throw ShapeError("matrix_from_json: row count does not match dim");
    }
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        if (rows[i].size() != dim) {
            throw ShapeError("matrix_from_json: ragged row");
        }
        for (std::size_t k = 0; k < dim; ++k) {
            const auto& z = rows[i][k];
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    OperatorRole role = OperatorRole::Derived;
    const auto name = j.value("role", std::string("derived"));
    for (auto r : {OperatorRole::Angle, OperatorRole::Translation, OperatorRole::V, OperatorRole::LPlus,
                   OperatorRole::LMinus, OperatorRole::Hamiltonian}) {
        if (to_string(r) == name) {
            role = r;
        }
    }
    return {std::move(m), role};
}

nlohmann::json level_to_json(const LevelRecord& level, const Lattice& lattice, const PhysicalParams& params) {
    const double unit = params.energy_unit();
    return {{"d", lattice.dimension()},
            {"alpha", lattice.alpha().value()},
            {"case", std::string(to_string(level.quantization.kind()))},
            {"N", level.quantization.n()},
            {"xi", level.xi},
            {"energy", level.energy / unit},
            {"bound", level.bound / unit},
            {"energy_raw", level.energy},
            {"bound_raw", level.bound},
            {"multiplicity", level.multiplicity},
            {"folded", level.folded},
            {"provenance", std::string(to_string(Provenance::ClosedForm))}};
}

nlohmann::json oracle_level_to_json(const EigenSolution& solution, const Lattice& lattice,
                                    const PhysicalParams& params) {
    const double unit = params.energy_unit();
    const double bound = energy_bound(lattice, params);
    return {{"d", lattice.dimension()},
            {"alpha", lattice.alpha().value()},
            {"case", "oracle"},
            {"N", nullptr},
            {"xi", oracle_xi(solution.energy, lattice, params)},
            {"energy", solution.energy / unit},
            {"bound", bound / unit},
            {"energy_raw", solution.energy},
            {"bound_raw", bound},
            {"multiplicity", 1},
            {"folded", false},
            {"provenance", std::string(to_string(solution.provenance))}};
}

std::string levels_csv_header() {
    return "d,alpha,case,N,xi,energy,bound,energy_raw,bound_raw,multiplicity,folded,provenance\n";
}

std::string level_to_csv_row(const LevelRecord& level, const Lattice& lattice, const PhysicalParams& params) {
    const double unit = params.energy_unit();
    std::ostringstream out;
    out << lattice.dimension() << ',' << format_double(lattice.alpha().value()) << ','
        << to_string(level.quantization.kind()) << ',' << level.quantization.n() << ',' << format_double(level.xi)
        << ',' << format_double(level.energy / unit) << ',' << format_double(level.bound / unit) << ','
        << format_double(level.energy) << ',' << format_double(level.bound) << ',' << level.multiplicity << ','
        << (level.folded ? "true" : "false") << ',' << to_string(Provenance::ClosedForm) << '\n';
    return out.str();
}

std::string oracle_level_to_csv_row(const EigenSolution& solution, const Lattice& lattice,
                                    const PhysicalParams& params) {
    const double unit = params.energy_unit();
    const double bound = energy_bound(lattice, params);
    std::ostringstream out;
    out << lattice.dimension() << ',' << format_double(lattice.alpha().value()) << ",oracle,,"
        << format_double(oracle_xi(solution.energy, lattice, params)) << ','
        << format_double(solution.energy / unit) << ',' << format_double(bound / unit) << ','
        << format_double(solution.energy) << ',' << format_double(bound) << ",1,false,"
        << to_string(solution.provenance) << '\n';
    return out.str();
}

nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& p : report.grid) {
        grid.push_back({{"d", p.d}, {"alpha", p.alpha}});
    }
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json entry{{"name", c.name},
                             {"relation", c.relation},
                             {"max_residual", c.max_residual},
                             {"tolerance", c.tolerance},
                             {"status", std::string(to_string(c.status))}};
        if (c.worst_point) {
            entry["worst_point"] = {{"d", c.worst_point->d}, {"alpha", c.worst_point->alpha}};
        } else {
            entry["worst_point"] = nullptr;
        }
        checks.push_back(std::move(entry));
    }
    return {{"version", report.version},
            {"timestamp", report.timestamp},
            {"params", {{"hbar", report.hbar}, {"mass", report.mass}, {"radius", report.radius}}},
            {"grid", std::move(grid)},
            {"checks", std::move(checks)},
            {"notes", report.notes},
            {"overall", std::string(report.overall())}};
}

std::string report_to_csv(const VerificationReport& report) {
    std::ostringstream out;
    out << "name,max_residual,tolerance,status,worst_d,worst_alpha\n";
    for (const auto& c : report.checks) {
        out << c.name << ',' << format_double(c.max_residual) << ',' << format_double(c.tolerance) << ','
            << to_string(c.status) << ',';
        if (c.worst_point) {
            out << c.worst_point->d << ',' << format_double(c.worst_point->alpha);
        } else {
            out << ',';
        }
        out << '\n';
    }
    return out.str();
}

std::string report_to_table(const VerificationReport& report) {
    std::ostringstream out;
    out << "fqcircle " << report.version << " verification report (" << report.timestamp << ")\n";
    out << "grid points: " << report.grid.size() << "\n\n";
    out << std::left << std::setw(36) << "check" << std::setw(14) << "status" << std::setw(14) << "residual"
        << std::setw(10) << "tol" << "worst (d, alpha)\n";
    out << std::string(86, '-') << '\n';
    for (const auto& c : report.checks) {
        std::ostringstream residual;
        residual << std::scientific << std::setprecision(3) << c.max_residual;
        std::ostringstream tol;
        tol << std::scientific << std::setprecision(0) << c.tolerance;
        out << std::left << std::setw(36) << c.name << std::setw(14) << to_string(c.status) << std::setw(14)
            << residual.str() << std::setw(10) << tol.str();
        if (c.worst_point) {
            out << '(' << c.worst_point->d << ", " << c.worst_point->alpha << ')';
        }
        out << '\n';
    }
    out << "\noverall: " << report.overall() << '\n';
    for (const auto& note : report.notes) {
        out << "note: " << note << '\n';
    }
    return out.str();
}

}  // namespace fqcircle
