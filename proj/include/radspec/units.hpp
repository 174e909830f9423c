#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "radspec/errors.hpp"

namespace radspec {

/**
 * CODATA 2018 constants.
 *
 * h, c and e are exact in the 2018 SI, so hc and hbar*c are derived from them
 * rather than typed in as truncated decimals. The atomic mass unit rest energy
 * is the 2018 recommended (measured) value.
 */
namespace codata2018 {

inline constexpr double planck_js = 6.62607015e-34;
inline constexpr double speed_of_light_ms = 299792458.0;
inline constexpr double elementary_charge_c = 1.602176634e-19;

/// hc in eV*cm (1.239841984...e-4).
inline constexpr double hc_ev_cm = planck_js * speed_of_light_ms / elementary_charge_c * 1.0e2;

/// hbar*c in eV*Angstrom (1973.269804...).
inline constexpr double hbar_c_ev_angstrom =
    planck_js * speed_of_light_ms / elementary_charge_c / (2.0 * std::numbers::pi) * 1.0e10;

/// m_u c^2 in eV.
inline constexpr double amu_rest_energy_ev = 931.49410242e6;

}  // namespace codata2018

/// The three constants needed to turn spectroscopic inputs into eV and Angstrom.
///
/// `natural()` is the hbar = m = 1 system used for figure data: every constant
/// is 1, so a "mass" of 1 gives lambda = hbar^2/2m = 1/2 and energies pass
/// through unconverted.
struct UnitSystem {
    double hbar_c;            // eV*Angstrom
    double amu_energy;        // eV
    double wavenumber_to_ev;  // eV per cm^-1

    static constexpr UnitSystem lab() noexcept {
        return {codata2018::hbar_c_ev_angstrom, codata2018::amu_rest_energy_ev, codata2018::hc_ev_cm};
    }

    static constexpr UnitSystem natural() noexcept { return {1.0, 1.0, 1.0}; }

    constexpr bool is_natural() const noexcept {
        return hbar_c == 1.0 && amu_energy == 1.0 && wavenumber_to_ev == 1.0;
    }
};

constexpr double wavenumber_to_ev(double wavenumber, const UnitSystem& units = UnitSystem::lab()) noexcept {
    return wavenumber * units.wavenumber_to_ev;
}

/// hbar^2 / (2m) in eV*Angstrom^2 for a mass given in amu.
inline double lambda_of_mass(double mass_amu, const UnitSystem& units = UnitSystem::lab()) {
    if (!(mass_amu > 0.0) || !std::isfinite(mass_amu)) {
        throw domain_error("lambda_of_mass: mass must be positive and finite");
    }
    return units.hbar_c * units.hbar_c / (2.0 * mass_amu * units.amu_energy);
}

struct MoleculeSpec {
    std::string name;
    double dissociation_energy;   // cm^-1
    double equilibrium_distance;  // Angstrom
    double mass;                  // amu (reduced mass)

    double dissociation_energy_ev(const UnitSystem& units = UnitSystem::lab()) const noexcept {
        return wavenumber_to_ev(dissociation_energy, units);
    }

    double lambda(const UnitSystem& units = UnitSystem::lab()) const { return lambda_of_mass(mass, units); }
};

inline void validate(const MoleculeSpec& mol) {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(mol.dissociation_energy)) {
        throw domain_error("molecule '" + mol.name + "': D0 must be positive");
    }
    if (!positive(mol.equilibrium_distance)) {
        throw domain_error("molecule '" + mol.name + "': r0 must be positive");
    }
    if (!positive(mol.mass)) {
        throw domain_error("molecule '" + mol.name + "': mass must be positive");
    }
}

/// N2 and CO parameters as used for the reference energy tables.
inline std::vector<MoleculeSpec> builtin_molecules() {
    return {
        {"N2", 96288.03528, 1.0940, 7.00335},
        {"CO", 87471.42567, 1.1282, 6.860586},
    };
}

inline MoleculeSpec find_molecule(std::string_view name, const std::vector<MoleculeSpec>& catalog) {
    for (const auto& mol : catalog) {
        if (mol.name == name) {
            return mol;
        }
    }
    throw not_found_error("unknown molecule '" + std::string(name) + "'");
}

inline MoleculeSpec find_molecule(std::string_view name) { return find_molecule(name, builtin_molecules()); }

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

}  // namespace detail

/**
 * Reads molecule presets from a plain key-value file.
 *
 *     # comment
 *     [N2]
 *     D0_cm1      = 96288.03528
 *     r0_angstrom = 1.0940
 *     mass_amu    = 7.00335
 *
 * Each `[name]` header opens a molecule; all three keys are required.
 * Failures throw parse_error carrying the offending line number.
 */
inline std::vector<MoleculeSpec> parse_molecule_file(std::istream& in) {
    struct Pending {
        MoleculeSpec spec;
        int header_line;
        bool has_d0 = false, has_r0 = false, has_mass = false;
    };

    std::vector<MoleculeSpec> out;
    std::optional<Pending> current;

    auto finish = [&]() {
        if (!current) {
            return;
        }
        const char* missing = !current->has_d0   ? "D0_cm1"
                              : !current->has_r0 ? "r0_angstrom"
                              : !current->has_mass ? "mass_amu"
                                                   : nullptr;
        if (missing) {
            throw parse_error(current->header_line,
                              "molecule '" + current->spec.name + "' is missing key " + missing);
        }
        try {
            validate(current->spec);
        } catch (const domain_error& e) {
            throw parse_error(current->header_line, e.what());
        }
        for (const auto& mol : out) {
            if (mol.name == current->spec.name) {
                throw parse_error(current->header_line, "duplicate molecule '" + mol.name + "'");
            }
        }
        out.push_back(current->spec);
        current.reset();
    };

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw parse_error(line_no, "unterminated section header");
            }
            auto name = detail::trim(line.substr(1, line.size() - 2));
            if (name.empty()) {
                throw parse_error(line_no, "empty molecule name");
            }
            finish();
            current = Pending{{std::string(name), 0.0, 0.0, 0.0}, line_no};
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw parse_error(line_no, "expected 'key = value'");
        }
        if (!current) {
            throw parse_error(line_no, "key outside of a [molecule] section");
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto text = detail::trim(line.substr(eq + 1));
        const auto value = detail::parse_double(text);
        if (!value) {
            throw parse_error(line_no, "invalid number '" + std::string(text) + "'");
        }
        if (key == "D0_cm1") {
            current->spec.dissociation_energy = *value;
            current->has_d0 = true;
        } else if (key == "r0_angstrom") {
            current->spec.equilibrium_distance = *value;
            current->has_r0 = true;
        } else if (key == "mass_amu") {
            current->spec.mass = *value;
            current->has_mass = true;
        } else {
            throw parse_error(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    finish();
    return out;
}

}  // namespace radspec
