#pragma once

#include <cmath>
#include <string>

#include "radspec/errors.hpp"
#include "radspec/units.hpp"

namespace radspec {

/// V(r) = a1 r^2 + a2 / r^2 + a3.  `lambda` is hbar^2/2m for the particle.
struct PseudoharmonicParams {
    double a1;      // eV/Angstrom^2
    double a2;      // eV*Angstrom^2
    double a3;      // eV
    double lambda;  // eV*Angstrom^2
};

/// V(r) = a / r^2 + b / r + c.
struct MieParams {
    double a;       // eV*Angstrom^2
    double b;       // eV*Angstrom
    double c;       // eV
    double lambda;  // eV*Angstrom^2
};

struct DerivedPseudoharmonic {
    double mu;  // sqrt(2 m a1) / hbar, Angstrom^-2
    double nu;  // root of nu(nu+1) = a2/lambda + l(l+1) with nu >= -1/2
    int ell;
};

struct DerivedMie {
    double gamma;     // sqrt(a/lambda + l(l+1) + 1/4)
    double delta_sq;  // b / lambda; negative for an attractive Coulomb term
    int ell;
};

namespace detail {

inline void require_positive_radius(double r, const char* what) {
    if (!(r > 0.0)) {
        throw domain_error(std::string(what) + ": r must be positive");
    }
}

inline void require_ell(int ell) {
    if (ell < 0) {
        throw domain_error("angular momentum quantum number must be non-negative");
    }
}

}  // namespace detail

inline double eval_pseudoharmonic(const PseudoharmonicParams& p, double r) {
    detail::require_positive_radius(r, "eval_pseudoharmonic");
    const double r2 = r * r;
    return p.a1 * r2 + p.a2 / r2 + p.a3;
}

inline double eval_mie(const MieParams& p, double r) {
    detail::require_positive_radius(r, "eval_mie");
    return p.a / (r * r) + p.b / r + p.c;
}

/// a1 = D0/r0^2, a2 = D0 r0^2, a3 = -2 D0: minimum V(r0) = 0.
inline PseudoharmonicParams pseudoharmonic_from_molecule(const MoleculeSpec& mol,
                                                         const UnitSystem& units = UnitSystem::lab()) {
    validate(mol);
    const double d0 = mol.dissociation_energy_ev(units);
    const double r0 = mol.equilibrium_distance;
    return {d0 / (r0 * r0), d0 * r0 * r0, -2.0 * d0, mol.lambda(units)};
}

/// Modified Kratzer D (r - r0)^2 / r^2 written as a Mie potential:
/// a = D r0^2, b = -2 D r0, c = D.
inline MieParams mie_from_molecule(const MoleculeSpec& mol, const UnitSystem& units = UnitSystem::lab()) {
    validate(mol);
    const double d = mol.dissociation_energy_ev(units);
    const double r0 = mol.equilibrium_distance;
    return {d * r0 * r0, -2.0 * d * r0, d, mol.lambda(units)};
}

/// Kratzer -D (2 r0/r - r0^2/r^2): the same a and b as the modified form with c = 0.
inline MieParams kratzer_from_molecule(const MoleculeSpec& mol, const UnitSystem& units = UnitSystem::lab()) {
    auto p = mie_from_molecule(mol, units);
    p.c = 0.0;
    return p;
}

inline DerivedPseudoharmonic derive_pseudoharmonic(const PseudoharmonicParams& p, int ell) {
    detail::require_ell(ell);
    if (!(p.lambda > 0.0)) {
        throw domain_error("pseudoharmonic: lambda must be positive");
    }
    if (!(p.a1 > 0.0)) {
        throw domain_error("pseudoharmonic: a1 must be positive for bound states");
    }
    const double l_term = static_cast<double>(ell) * (ell + 1);
    const double disc = 1.0 + 4.0 * (p.a2 / p.lambda + l_term);
    if (!(disc >= 0.0)) {
        throw domain_error("pseudoharmonic: a2 too negative, nu is complex (a2/lambda + l(l+1) < -1/4)");
    }
    return {std::sqrt(p.a1 / p.lambda), 0.5 * (std::sqrt(disc) - 1.0), ell};
}

inline DerivedMie derive_mie(const MieParams& p, int ell) {
    detail::require_ell(ell);
    if (!(p.lambda > 0.0)) {
        throw domain_error("mie: lambda must be positive");
    }
    const double gamma_sq = p.a / p.lambda + static_cast<double>(ell) * (ell + 1) + 0.25;
    if (!(gamma_sq >= 0.0)) {
        throw domain_error("mie: a too negative, gamma is complex (a/lambda + l(l+1) + 1/4 < 0)");
    }
    return {std::sqrt(gamma_sq), p.b / p.lambda, ell};
}

}  // namespace radspec
