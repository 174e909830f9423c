// radspec: energy tables, wavefunction samples and oracle verification for
// pseudoharmonic and Mie-type (Kratzer) diatomic potentials.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "radspec/commands.hpp"

namespace {

using namespace radspec;
using namespace radspec::cli;

QuantumNumbers parse_state(const std::string& text) {
    std::istringstream in(text);
    QuantumNumbers qn;
    char comma = 0;
    if (!(in >> qn.n >> comma >> qn.ell) || comma != ',' || !in.eof()) {
        throw config_error("state must be written as n,l (got '" + text + "')");
    }
    return qn;
}

std::filesystem::path output_path(const std::string& requested) {
    std::filesystem::path path(requested);
    if (const char* dir = std::getenv("RADSPEC_OUTPUT_DIR"); dir && *dir && path.is_relative()) {
        path = std::filesystem::path(dir) / path;
    }
    return path;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound-state spectra of pseudoharmonic and Mie-type diatomic potentials"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read options from a key = value file");

    RunConfig cfg;
    std::string output;
    std::vector<std::string> states;
    std::vector<double> coefficients;
    double d0 = 0.0, r0 = 0.0, mass = 0.0;

    const std::map<std::string, PotentialFamily> families{{"pseudoharmonic", PotentialFamily::pseudoharmonic},
                                                          {"kratzer", PotentialFamily::kratzer}};
    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
    const std::map<std::string, UnitMode> unit_modes{{"lab", UnitMode::lab}, {"natural", UnitMode::natural}};

    app.add_option("--molecule", cfg.molecule, "Preset name (N2, CO) or a name from --molecule-file")
        ->capture_default_str();
    app.add_option("--molecule-file", cfg.molecule_file, "Key-value file with molecule sections");
    auto* d0_opt = app.add_option("--D0-cm1", d0, "Inline dissociation energy in cm^-1");
    auto* r0_opt = app.add_option("--r0-angstrom", r0, "Inline equilibrium distance in Angstrom");
    auto* mass_opt = app.add_option("--mass-amu", mass, "Inline reduced mass in amu");
    d0_opt->needs(r0_opt, mass_opt);
    r0_opt->needs(d0_opt, mass_opt);
    mass_opt->needs(d0_opt, r0_opt);

    app.add_option("--family", cfg.family, "pseudoharmonic or kratzer")
        ->transform(CLI::CheckedTransformer(families, CLI::ignore_case))
        ->capture_default_str();
    app.add_option("--units", cfg.units, "lab (eV, Angstrom) or natural (hbar = m = 1)")
        ->transform(CLI::CheckedTransformer(unit_modes, CLI::ignore_case));
    app.add_option("--format", cfg.format, "csv or json")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--n-max", cfg.n_max, "Highest radial quantum number (levels with l <= n)")
        ->check(CLI::Range(0, max_n))
        ->capture_default_str();
    app.add_option("-o,--output", output, "Output file (default: stdout)");
    app.add_option("--coefficients", coefficients, "Potential coefficients a1 a2 a3 or a b c")->expected(3);
    app.add_option("--state", states, "Wavefunction state n,l (repeatable)");
    app.add_option("--r-max", cfg.r_max, "Largest sampled radius (default: from the states)");
    app.add_option("--points", cfg.points, "Number of sample points")->capture_default_str();
    app.add_option("--perturb-lambda", cfg.perturb_lambda, "Test mode: scale hbar^2/2m in the closed form")
        ->group("Testing");

    app.add_subcommand("energies", "Energy levels at full precision")->callback([&] {
        cfg.command = Command::energies;
    });
    app.add_subcommand("table", "Energy table at six decimals")->callback([&] { cfg.command = Command::table; });
    app.add_subcommand("wavefunction", "Sampled normalized radial wavefunctions")->callback([&] {
        cfg.command = Command::wavefunction;
    });
    app.add_subcommand("verify", "Closed-form energies against the Numerov eigensolver")->callback([&] {
        cfg.command = Command::verify;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config_error;
    }

    try {
        if (*d0_opt) {
            cfg.inline_molecule = MoleculeSpec{"inline", d0, r0, mass};
        }
        if (!coefficients.empty()) {
            cfg.coefficients = std::array<double, 3>{coefficients[0], coefficients[1], coefficients[2]};
        }
        if (!states.empty()) {
            cfg.states.clear();
            for (const auto& s : states) {
                cfg.states.push_back(parse_state(s));
            }
        }

        if (output.empty()) {
            return run(cfg, std::cout);
        }
        std::ostringstream buffer;
        const int code = run(cfg, buffer);
        const auto path = output_path(output);
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            throw config_error("cannot write '" + path.string() + "'");
        }
        file << buffer.str();
        return code;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const domain_error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_verify_failed;
    }
}
