#include "fqcircle/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "fqcircle/errors.hpp"
#include "fqcircle/lattice.hpp"
#include "fqcircle/operators.hpp"
#include "fqcircle/serialization.hpp"
#include "fqcircle/spectral.hpp"
#include "fqcircle/verification.hpp"

namespace fqcircle::cli {

namespace {

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::size_t d = 0;
    double alpha = 0.0;
    double hbar = 1.0;
    double mass = 1.0;
    double radius = 1.0;
    std::string case_name = "full";
    std::optional<std::int64_t> n;
    std::string format = "json";
    std::string out_path;
    bool compare = false;
    bool distinct = false;
    std::optional<double> psi0_re, psi0_im, psi1_re, psi1_im;
    std::vector<std::size_t> grid_d;
    std::vector<double> grid_alpha;
    std::string op = "h";
};

void add_common(CLI::App* sub, RunConfig& cfg, bool require_point) {
    auto* d = sub->add_option("--d", cfg.d, "number of lattice points");
    auto* alpha = sub->add_option("--alpha", cfg.alpha, "deformation parameter alpha > 0");
    if (require_point) {
        d->required();
        alpha->required();
    }
    sub->add_option("--hbar", cfg.hbar, "reduced Planck constant (default 1)");
    sub->add_option("--mass", cfg.mass, "particle mass (default 1)");
    sub->add_option("--radius", cfg.radius, "circle radius (default 1)");
    sub->add_option("--out", cfg.out_path, "output file (default: $" + std::string(kOutputDirEnv) + " or stdout)");
}

// Writes to --out, to $FQCIRCLE_OUTPUT_DIR/<stem>.<ext>, or to out.
void emit(const RunConfig& cfg, std::string_view stem, const std::string& payload, std::ostream& out) {
    std::filesystem::path path;
    if (!cfg.out_path.empty()) {
        path = cfg.out_path;
    } else if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        path = std::filesystem::path(dir) / (std::string(stem) + "." + cfg.format);
    }
    if (path.empty()) {
        out << payload;
        return;
    }
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream file(path);
    if (!file) {
        throw UsageError("cannot open output file " + path.string());
    }
    file << payload;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void require_format(const RunConfig& cfg, std::initializer_list<std::string_view> allowed) {
    for (auto f : allowed) {
        if (cfg.format == f) {
            return;
        }
    }
    throw UsageError("unsupported --format " + cfg.format);
}

int cmd_lattice(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "csv"});
    const Lattice lattice = build_lattice(cfg.d, DeformationParameter(cfg.alpha));
    emit(cfg, "lattice", cfg.format == "json" ? dump(lattice_to_json(lattice)) : lattice_to_csv(lattice), out);
    return kExitSuccess;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "csv"});
    const Lattice lattice = build_lattice(cfg.d, DeformationParameter(cfg.alpha));
    const PhysicalParams params(cfg.hbar, cfg.mass, cfg.radius);
    const bool oracle_mode = cfg.case_name == "oracle";
    const auto kind = case_kind_from_string(cfg.case_name);
    if (!oracle_mode && !kind) {
        throw UsageError("unknown --case " + cfg.case_name);
    }
    if (oracle_mode && cfg.n) {
        throw UsageError("--N has no meaning for --case oracle");
    }
    if (cfg.compare && (kind != CaseKind::FullPeriod || cfg.n || cfg.distinct)) {
        throw UsageError("--compare requires --case full without --N or --distinct");
    }
    if (oracle_mode && cfg.distinct) {
        throw UsageError("--distinct applies to closed-form cases only");
    }

    const double unit = params.energy_unit();
    std::vector<EigenSolution> oracle;
    if (oracle_mode || cfg.compare) {
        oracle = diagonalize(hamiltonian_free(lattice, params));
    }

    // One record per N = 0..d-1 (ascending energy), or the distinct levels,
    // or the single requested N.
    std::vector<LevelRecord> levels;
    if (kind) {
        if (cfg.n) {
            const QuantizationCase qcase(*kind, *cfg.n);
            const SpectralAngle xi = qcase.principal_xi(cfg.d);
            levels.push_back({qcase, xi.value(), energy_from_xi(xi, lattice, params), energy_bound(lattice, params),
                              1, qcase.folded(cfg.d)});
        } else {
            const auto distinct = case_levels(*kind, lattice, params);
            if (cfg.distinct) {
                levels = distinct;
            } else {
                for (std::size_t n = 0; n < cfg.d; ++n) {
                    const QuantizationCase qcase(*kind, static_cast<std::int64_t>(n));
                    const SpectralAngle xi = qcase.principal_xi(cfg.d);
                    std::size_t multiplicity = 1;
                    for (const auto& level : distinct) {
                        if (level.quantization.folded_quarter_steps(cfg.d) == qcase.folded_quarter_steps(cfg.d)) {
                            multiplicity = level.multiplicity;
                        }
                    }
                    levels.push_back({qcase, xi.value(), energy_from_xi(xi, lattice, params),
                                      energy_bound(lattice, params), multiplicity, qcase.folded(cfg.d)});
                }
                std::stable_sort(levels.begin(), levels.end(),
                                 [](const LevelRecord& a, const LevelRecord& b) { return a.energy < b.energy; });
            }
        }
    }

    std::string payload;
    if (cfg.format == "json") {
        nlohmann::json doc{{"d", cfg.d},
                           {"alpha", cfg.alpha},
                           {"case", cfg.case_name},
                           {"energy_unit", "hbar^2/(m R^2)"},
                           {"bound", energy_bound(lattice, params) / unit}};
        nlohmann::json records = nlohmann::json::array();
        if (oracle_mode) {
            for (const auto& s : oracle) {
                records.push_back(oracle_level_to_json(s, lattice, params));
            }
        } else {
            for (const auto& level : levels) {
                records.push_back(level_to_json(level, lattice, params));
            }
        }
        doc["levels"] = std::move(records);
        if (cfg.compare) {
            nlohmann::json oracle_records = nlohmann::json::array();
            nlohmann::json diffs = nlohmann::json::array();
            double worst = 0.0;
            for (std::size_t i = 0; i < oracle.size(); ++i) {
                oracle_records.push_back(oracle_level_to_json(oracle[i], lattice, params));
                const double closed = levels[i].energy / unit;
                const double numeric = oracle[i].energy / unit;
                const double diff = std::fabs(closed - numeric);
                worst = std::max(worst, diff);
                diffs.push_back({{"index", i}, {"closed_form", closed}, {"oracle", numeric}, {"abs_diff", diff}});
            }
            doc["oracle"] = std::move(oracle_records);
            doc["comparison"] = std::move(diffs);
            doc["max_abs_diff"] = worst;
        }
        payload = dump(doc);
    } else {
        std::ostringstream csv;
        csv << levels_csv_header();
        if (!oracle_mode) {
            for (const auto& level : levels) {
                csv << level_to_csv_row(level, lattice, params);
            }
        }
        for (const auto& s : oracle) {
            csv << oracle_level_to_csv_row(s, lattice, params);
        }
        payload = csv.str();
    }
    emit(cfg, "spectrum", payload, out);
    return kExitSuccess;
}

int cmd_wavefunction(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "csv"});
    const auto kind = case_kind_from_string(cfg.case_name);
    if (!kind) {
        throw UsageError("wavefunction needs --case full|quarter|half|threequarter");
    }
    const Lattice lattice = build_lattice(cfg.d, DeformationParameter(cfg.alpha));
    const PhysicalParams params(cfg.hbar, cfg.mass, cfg.radius);
    const QuantizationCase qcase(*kind, cfg.n.value_or(0));

    const bool half = *kind == CaseKind::HalfPeriod;
    const Complex psi0(cfg.psi0_re.value_or(half ? 0.0 : 1.0), cfg.psi0_im.value_or(0.0));
    Complex psi1;
    if (cfg.psi1_re || cfg.psi1_im) {
        psi1 = Complex(cfg.psi1_re.value_or(0.0), cfg.psi1_im.value_or(0.0));
    } else if (const auto forced = case_constrained_psi1(qcase, cfg.d, psi0)) {
        psi1 = *forced;
    } else {
        psi1 = half ? Complex(1.0) : psi0 * std::cos(qcase.raw_xi(cfg.d));
    }
    const RecurrenceInit init(psi0, psi1);
    const auto psi = case_wavefunction(qcase, lattice, init);
    const double energy = case_energy(qcase, lattice, params);
    const auto angles = lattice.angles();

    std::string payload;
    if (cfg.format == "json") {
        nlohmann::json samples = nlohmann::json::array();
        for (std::size_t n = 0; n < psi.size(); ++n) {
            samples.push_back({{"n", n}, {"theta", angles[n]}, {"psi", {psi[n].real(), psi[n].imag()}}});
        }
        payload = dump({{"d", cfg.d},
                        {"alpha", cfg.alpha},
                        {"case", cfg.case_name},
                        {"N", qcase.n()},
                        {"xi", qcase.raw_xi(cfg.d)},
                        {"energy", energy / params.energy_unit()},
                        {"psi0", {psi0.real(), psi0.imag()}},
                        {"psi1", {psi1.real(), psi1.imag()}},
                        {"samples", std::move(samples)}});
    } else {
        std::ostringstream csv;
        csv << "n,theta,re_psi,im_psi\n";
        for (std::size_t n = 0; n < psi.size(); ++n) {
            csv << n << ',' << format_double(angles[n]) << ',' << format_double(psi[n].real()) << ','
                << format_double(psi[n].imag()) << '\n';
        }
        payload = csv.str();
    }
    emit(cfg, "wavefunction", payload, out);
    return kExitSuccess;
}

int cmd_matrix(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json"});
    const Lattice lattice = build_lattice(cfg.d, DeformationParameter(cfg.alpha));
    const PhysicalParams params(cfg.hbar, cfg.mass, cfg.radius);
    std::optional<ComplexMatrix> m;
    if (cfg.op == "angle") {
        m = angle_operator(lattice);
    } else if (cfg.op == "u") {
        m = translation_u(cfg.d);
    } else if (cfg.op == "v") {
        m = v_operator(lattice);
    } else if (cfg.op == "lplus") {
        m = l_plus(lattice, params);
    } else if (cfg.op == "lminus") {
        m = l_minus(lattice, params);
    } else if (cfg.op == "h") {
        m = hamiltonian_free(lattice, params);
    } else {
        throw UsageError("unknown --op " + cfg.op);
    }
    emit(cfg, "matrix_" + cfg.op, dump(matrix_to_json(*m)), out);
    return kExitSuccess;
}

int cmd_verify(const RunConfig& cfg, bool point_given, std::ostream& out) {
    require_format(cfg, {"json", "csv", "text"});
    std::vector<GridPoint> grid;
    if (!cfg.grid_d.empty() || !cfg.grid_alpha.empty()) {
        if (point_given) {
            throw UsageError("use either --d/--alpha or --grid-d/--grid-alpha");
        }
        std::vector<std::size_t> ds = cfg.grid_d;
        std::vector<double> alphas = cfg.grid_alpha;
        if (ds.empty()) {
            ds = {2, 3, 4, 8, 16, 32, 64};
        }
        if (alphas.empty()) {
            alphas = {0.5, 1.0, 2.0, 3.0};
        }
        for (auto d : ds) {
            for (auto a : alphas) {
                grid.push_back({d, a});
            }
        }
    } else if (point_given) {
        if (cfg.d == 0 || cfg.alpha == 0.0) {
            throw UsageError("--d and --alpha must be given together");
        }
        grid.push_back({cfg.d, cfg.alpha});
    } else {
        grid = default_grid();
    }
    const VerificationReport report = run_all_checks(grid, PhysicalParams(cfg.hbar, cfg.mass, cfg.radius));
    std::string payload;
    if (cfg.format == "json") {
        payload = dump(report_to_json(report));
    } else if (cfg.format == "csv") {
        payload = report_to_csv(report);
    } else {
        payload = report_to_table(report);
    }
    emit(cfg, "verify", payload, out);
    return report.gating_passed() ? kExitSuccess : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite quantum mechanics on a circle with alpha-uniformly distributed points", "fqcircle"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* lattice = app.add_subcommand("lattice", "angles theta_n and spacing sigma");
    add_common(lattice, cfg, true);
    lattice->add_option("--format", cfg.format, "json|csv");

    auto* spectrum = app.add_subcommand("spectrum", "closed-form or oracle energy levels");
    add_common(spectrum, cfg, true);
    spectrum->add_option("--case", cfg.case_name, "full|quarter|half|threequarter|oracle");
    spectrum->add_option("--N", cfg.n, "quantum number N");
    spectrum->add_flag("--compare", cfg.compare, "also diagonalize H and report per-level differences");
    spectrum->add_flag("--distinct", cfg.distinct, "list distinct levels with multiplicities");
    spectrum->add_option("--format", cfg.format, "json|csv");

    auto* wave = app.add_subcommand("wavefunction", "samples of a case wavefunction");
    add_common(wave, cfg, true);
    wave->add_option("--case", cfg.case_name, "full|quarter|half|threequarter");
    wave->add_option("--N", cfg.n, "quantum number N (default 0)");
    wave->add_option("--psi0-re", cfg.psi0_re, "real part of psi(theta_0) (default 1, 0 for half)");
    wave->add_option("--psi0-im", cfg.psi0_im, "imaginary part of psi(theta_0)");
    wave->add_option("--psi1-re", cfg.psi1_re, "real part of psi(theta_1) (default: forced by the case)");
    wave->add_option("--psi1-im", cfg.psi1_im, "imaginary part of psi(theta_1)");
    wave->add_option("--format", cfg.format, "json|csv");

    auto* matrix = app.add_subcommand("matrix", "export an operator matrix as JSON");
    add_common(matrix, cfg, true);
    matrix->add_option("--op", cfg.op, "angle|u|v|lplus|lminus|h");
    matrix->add_option("--format", cfg.format, "json");

    auto* verify = app.add_subcommand("verify", "run the verification catalogue over a grid");
    add_common(verify, cfg, false);
    verify->add_option("--grid-d", cfg.grid_d, "comma-separated list of d")->delimiter(',');
    verify->add_option("--grid-alpha", cfg.grid_alpha, "comma-separated list of alpha")->delimiter(',');
    verify->add_option("--format", cfg.format, "json|csv|text");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (lattice->parsed()) {
            return cmd_lattice(cfg, out);
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(cfg, out);
        }
        if (wave->parsed()) {
            return cmd_wavefunction(cfg, out);
        }
        if (matrix->parsed()) {
            return cmd_matrix(cfg, out);
        }
        const bool point_given = verify->count("--d") > 0 || verify->count("--alpha") > 0;
        return cmd_verify(cfg, point_given, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace fqcircle::cli
