#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"

#include "radspec/errors.hpp"
#include "radspec/oracle.hpp"
#include "radspec/potentials.hpp"
#include "radspec/spectra.hpp"
#include "radspec/units.hpp"
#include "radspec/wavefunctions.hpp"

// Command implementations behind the `radspec` executable. Argument parsing
// lives in tools/; everything here writes to a caller-supplied stream so the
// commands can be tested without spawning processes.

namespace radspec::cli {

enum class Command { energies, table, wavefunction, verify };
enum class PotentialFamily { pseudoharmonic, kratzer };
enum class OutputFormat { csv, json };
enum class UnitMode { lab, natural };

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int max_n = 12;

/// Default state set for wavefunction plots.
inline std::vector<QuantumNumbers> default_states() { return {{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}}; }

struct RunConfig {
    Command command = Command::table;
    PotentialFamily family = PotentialFamily::pseudoharmonic;
    UnitMode units = UnitMode::lab;
    OutputFormat format = OutputFormat::csv;
    int n_max = 4;

    std::string molecule = "N2";
    std::string molecule_file;
    std::optional<MoleculeSpec> inline_molecule;

    /// Explicit (a1, a2, a3) or (a, b, c); overrides the molecule mapping.
    std::optional<std::array<double, 3>> coefficients;

    std::vector<QuantumNumbers> states = default_states();
    double r_max = 0.0;  // 0: pick from the states' extent
    int points = 1000;

    /// Test hook: scales lambda in the closed-form path only, so `verify`
    /// must report failures.
    double perturb_lambda = 1.0;
};

using Potential = std::variant<PseudoharmonicParams, MieParams>;

// Natural-unit defaults used for figure data: a1 = a2 = 1, a3 = 0 and a
// modified Kratzer well with D = 2, r0 = 1.
inline constexpr std::array<double, 3> natural_pseudoharmonic = {1.0, 1.0, 0.0};
inline constexpr double natural_kratzer_depth = 2.0;
inline constexpr double natural_kratzer_radius = 1.0;

inline void validate(const RunConfig& cfg) {
    if (cfg.n_max < 0 || cfg.n_max > max_n) {
        throw config_error("n_max must lie in [0, " + std::to_string(max_n) + "]");
    }
    if (cfg.points < 1) {
        throw config_error("points must be positive");
    }
    if (cfg.r_max < 0.0) {
        throw config_error("r_max must be positive");
    }
    if (cfg.states.empty()) {
        throw config_error("no states requested");
    }
    for (const auto& qn : cfg.states) {
        if (qn.n < 0 || qn.ell < 0 || qn.n > max_n || qn.ell > max_n) {
            throw config_error("state (n, l) out of range");
        }
    }
    if (!(cfg.perturb_lambda > 0.0)) {
        throw config_error("perturb_lambda must be positive");
    }
}

inline MoleculeSpec resolve_molecule(const RunConfig& cfg) {
    if (cfg.inline_molecule) {
        try {
            validate(*cfg.inline_molecule);
        } catch (const domain_error& e) {
            throw config_error(e.what());
        }
        return *cfg.inline_molecule;
    }
    try {
        if (!cfg.molecule_file.empty()) {
            std::ifstream in(cfg.molecule_file);
            if (!in) {
                throw config_error("cannot open molecule file '" + cfg.molecule_file + "'");
            }
            return find_molecule(cfg.molecule, parse_molecule_file(in));
        }
        return find_molecule(cfg.molecule);
    } catch (const parse_error& e) {
        throw config_error(cfg.molecule_file + ": " + e.what());
    } catch (const not_found_error& e) {
        throw config_error(e.what());
    }
}

/// Length scale used to size numerical grids: r0 for molecules, 1 otherwise.
inline double length_scale(const RunConfig& cfg) {
    if (cfg.units == UnitMode::natural) {
        return 1.0;
    }
    return resolve_molecule(cfg).equilibrium_distance;
}

inline Potential resolve_potential(const RunConfig& cfg) {
    const bool natural = cfg.units == UnitMode::natural;
    const UnitSystem units = natural ? UnitSystem::natural() : UnitSystem::lab();
    const MoleculeSpec mol = natural ? MoleculeSpec{"natural", natural_kratzer_depth, natural_kratzer_radius, 1.0}
                                     : resolve_molecule(cfg);
    if (cfg.family == PotentialFamily::pseudoharmonic) {
        auto p = pseudoharmonic_from_molecule(mol, units);
        if (natural) {
            std::tie(p.a1, p.a2, p.a3) = std::tuple{natural_pseudoharmonic[0], natural_pseudoharmonic[1],
                                                    natural_pseudoharmonic[2]};
        }
        if (cfg.coefficients) {
            std::tie(p.a1, p.a2, p.a3) = std::tuple{(*cfg.coefficients)[0], (*cfg.coefficients)[1],
                                                    (*cfg.coefficients)[2]};
        }
        return p;
    }
    auto p = mie_from_molecule(mol, units);
    if (cfg.coefficients) {
        std::tie(p.a, p.b, p.c) =
            std::tuple{(*cfg.coefficients)[0], (*cfg.coefficients)[1], (*cfg.coefficients)[2]};
    }
    return p;
}

inline std::string format_fixed6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

namespace detail {

inline std::vector<EnergyLevel> levels_for(const Potential& pot, const std::vector<QuantumNumbers>& qns) {
    std::vector<EnergyLevel> out;
    for (const auto& qn : qns) {
        out.push_back(std::visit([&](const auto& p) { return energy_level(p, qn); }, pot));
    }
    return out;
}

inline Potential with_lambda_scaled(Potential pot, double factor) {
    std::visit([&](auto& p) { p.lambda *= factor; }, pot);
    return pot;
}

inline void write_levels(std::ostream& out, const std::vector<EnergyLevel>& levels, OutputFormat format,
                         bool six_decimals) {
    auto text = [&](double e) { return six_decimals ? format_fixed6(e) : format_lossless(e); };
    if (format == OutputFormat::json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& lv : levels) {
            // Round-trip through the printed text so JSON and CSV agree digit for digit.
            arr.push_back({{"n", lv.qn.n}, {"l", lv.qn.ell}, {"energy_ev", std::stod(text(lv.energy))}});
        }
        out << arr.dump(2) << '\n';
        return;
    }
    out << "n,l,energy_ev\n";
    for (const auto& lv : levels) {
        out << lv.qn.n << ',' << lv.qn.ell << ',' << text(lv.energy) << '\n';
    }
}

}  // namespace detail

/// Levels with n <= n_max, l <= n at six decimals.
inline int cmd_table(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    const auto pot = resolve_potential(cfg);
    detail::write_levels(out, detail::levels_for(pot, level_indices(cfg.n_max)), cfg.format, true);
    return exit_ok;
}

/// Same enumeration as cmd_table, printed losslessly.
inline int cmd_energies(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    const auto pot = resolve_potential(cfg);
    detail::write_levels(out, detail::levels_for(pot, level_indices(cfg.n_max)), cfg.format, false);
    return exit_ok;
}

inline double default_r_max(const RunConfig& cfg, const std::vector<RadialWavefunction>& wfs) {
    if (cfg.r_max > 0.0) {
        return cfg.r_max;
    }
    if (cfg.units == UnitMode::natural) {
        return cfg.family == PotentialFamily::pseudoharmonic ? 10.0 : 40.0;
    }
    double hi = 0.0;
    for (const auto& wf : wfs) {
        hi = std::max(hi, wf.support().second);
    }
    return hi;
}

/// Column "r" followed by one "R_n_l" column per requested state.
inline int cmd_wavefunction(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    const auto pot = resolve_potential(cfg);
    std::vector<RadialWavefunction> wfs;
    for (const auto& qn : cfg.states) {
        wfs.push_back(std::visit([&](const auto& p) { return radial_wavefunction(p, qn); }, pot));
    }
    const auto grid = uniform_grid(default_r_max(cfg, wfs), cfg.points);

    if (cfg.format == OutputFormat::json) {
        nlohmann::ordered_json doc;
        doc["r"] = grid;
        auto cols = nlohmann::ordered_json::array();
        for (const auto& wf : wfs) {
            std::vector<double> values;
            for (const auto& s : sample(wf, grid)) {
                values.push_back(s.value);
            }
            cols.push_back({{"n", wf.qn().n}, {"l", wf.qn().ell}, {"R", values}});
        }
        doc["states"] = cols;
        out << doc.dump() << '\n';
        return exit_ok;
    }

    if (wfs.size() == 1) {
        const auto samples = sample(wfs.front(), grid);
        write_csv(out, samples);
        return exit_ok;
    }
    out << 'r';
    for (const auto& wf : wfs) {
        out << ",R_" << wf.qn().n << '_' << wf.qn().ell;
    }
    out << '\n';
    for (double r : grid) {
        out << format_lossless(r);
        for (const auto& wf : wfs) {
            out << ',' << format_lossless(wf(r));
        }
        out << '\n';
    }
    return exit_ok;
}

struct VerifyRow {
    QuantumNumbers qn;
    double closed_form = 0.0;
    double oracle = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    bool pass = false;
    std::string error;
};

inline constexpr double verify_tolerance = 1e-6;

/// Depth scale for relative deviations: E - V_min where the potential has a
/// finite minimum, otherwise the distance to the asymptote.
inline double reference_scale(const Potential& pot, double energy) {
    if (const auto* p = std::get_if<PseudoharmonicParams>(&pot)) {
        const double v_min = p->a2 >= 0.0 ? p->a3 + 2.0 * std::sqrt(p->a1 * p->a2) : p->a3;
        return std::abs(energy - v_min);
    }
    const auto& p = std::get<MieParams>(pot);
    if (p.a > 0.0 && p.b < 0.0) {
        return std::abs(energy - (p.c - p.b * p.b / (4.0 * p.a)));
    }
    return std::abs(p.c - energy);
}

inline oracle::RadialProblem radial_problem(const Potential& pot, int ell) {
    return std::visit(
        [&](const auto& p) -> oracle::RadialProblem {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, PseudoharmonicParams>) {
                return {[p](double r) { return eval_pseudoharmonic(p, r); }, p.lambda, ell};
            } else {
                return {[p](double r) { return eval_mie(p, r); }, p.lambda, ell};
            }
        },
        pot);
}

inline std::optional<double> continuum_of(const Potential& pot) {
    if (const auto* p = std::get_if<MieParams>(&pot)) {
        return p->c;
    }
    return std::nullopt;
}

/// Closed form against the Numerov oracle, one solve per level, solved concurrently.
inline std::vector<VerifyRow> verify_levels(const Potential& pot, const std::vector<QuantumNumbers>& qns,
                                            double scale, double perturb_lambda = 1.0) {
    const auto closed_pot = detail::with_lambda_scaled(pot, perturb_lambda);
    std::vector<std::future<VerifyRow>> jobs;
    for (const auto& qn : qns) {
        jobs.push_back(std::async(std::launch::async, [&, qn] {
            VerifyRow row;
            row.qn = qn;
            try {
                row.closed_form = std::visit([&](const auto& p) { return energy_level(p, qn).energy; }, closed_pot);
                const auto prob = radial_problem(pot, qn.ell);
                const auto cfg = oracle::auto_config(prob, qn.n, scale, continuum_of(pot));
                row.oracle = oracle::solve_eigenvalue(prob, qn.n, cfg).energy;
                row.abs_dev = std::abs(row.oracle - row.closed_form);
                row.rel_dev = row.abs_dev / reference_scale(pot, row.closed_form);
                row.pass = row.rel_dev <= verify_tolerance;
            } catch (const std::exception& e) {
                row.error = e.what();
                row.pass = false;
            }
            return row;
        }));
    }
    std::vector<VerifyRow> rows;
    for (auto& job : jobs) {
        rows.push_back(job.get());
    }
    return rows;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    const auto pot = resolve_potential(cfg);
    const auto rows = verify_levels(pot, level_indices(cfg.n_max), length_scale(cfg), cfg.perturb_lambda);

    bool all_pass = true;
    if (cfg.format == OutputFormat::json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            all_pass = all_pass && row.pass;
            nlohmann::ordered_json j{{"n", row.qn.n},          {"l", row.qn.ell},
                                     {"closed_form", row.closed_form}, {"oracle", row.oracle},
                                     {"abs_dev", row.abs_dev},  {"rel_dev", row.rel_dev},
                                     {"status", row.pass ? "PASS" : "FAIL"}};
            if (!row.error.empty()) {
                j["error"] = row.error;
            }
            arr.push_back(j);
        }
        out << arr.dump(2) << '\n';
    } else {
        out << "n,l,closed_form,oracle,abs_dev,rel_dev,status\n";
        for (const auto& row : rows) {
            all_pass = all_pass && row.pass;
            out << row.qn.n << ',' << row.qn.ell << ',' << format_lossless(row.closed_form) << ','
                << format_lossless(row.oracle) << ',' << format_lossless(row.abs_dev) << ','
                << format_lossless(row.rel_dev) << ',' << (row.pass ? "PASS" : "FAIL");
            if (!row.error.empty()) {
                out << ",\"" << row.error << '"';
            }
            out << '\n';
        }
    }
    return all_pass ? exit_ok : exit_verify_failed;
}

inline int run(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::energies:
            return cmd_energies(cfg, out);
        case Command::table:
            return cmd_table(cfg, out);
        case Command::wavefunction:
            return cmd_wavefunction(cfg, out);
        case Command::verify:
            return cmd_verify(cfg, out);
    }
    return exit_config_error;
}

}  // namespace radspec::cli
