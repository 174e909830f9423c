#pragma once

#include <cmath>
#include <vector>

#include "radspec/errors.hpp"
#include "radspec/potentials.hpp"

namespace radspec {

struct QuantumNumbers {
    int n = 0;    // radial: number of interior nodes
    int ell = 0;  // angular momentum

    friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

struct EnergyLevel {
    QuantumNumbers qn;
    double energy;  // eV (or natural units)
};

namespace detail {

inline void require_valid(const QuantumNumbers& qn) {
    if (qn.n < 0 || qn.ell < 0) {
        throw domain_error("quantum numbers must be non-negative");
    }
}

}  // namespace detail

/// E = a3 + 4 lambda mu (n + 1/2 + (2 nu + 1)/4).
inline EnergyLevel energy_pseudoharmonic(const PseudoharmonicParams& p, const QuantumNumbers& qn) {
    detail::require_valid(qn);
    const auto d = derive_pseudoharmonic(p, qn.ell);
    const double e = p.a3 + 4.0 * p.lambda * d.mu * (qn.n + 0.5 + (2.0 * d.nu + 1.0) / 4.0);
    return {qn, e};
}

/// The same spectrum written directly in the potential coefficients,
///   E = a3 + sqrt(8 hbar^2 a1 / m) (n + 1/2 + sqrt(1 + 4 l(l+1) + 8 m a2 / hbar^2) / 4),
/// with hbar^2/m = 2 lambda. Kept as an independent algebraic route.
inline double energy_pseudoharmonic_direct(const PseudoharmonicParams& p, const QuantumNumbers& qn) {
    detail::require_valid(qn);
    (void)derive_pseudoharmonic(p, qn.ell);  // domain checks
    const double hbar2_over_m = 2.0 * p.lambda;
    const double l_term = static_cast<double>(qn.ell) * (qn.ell + 1);
    const double root = std::sqrt(1.0 + 4.0 * l_term + 8.0 * p.a2 / hbar2_over_m);
    return p.a3 + std::sqrt(8.0 * hbar2_over_m * p.a1) * (qn.n + 0.5 + 0.25 * root);
}

/// Inverse-square-plus-square potential (a3 = 0).
inline EnergyLevel energy_pseudoharmonic_a3zero(const PseudoharmonicParams& p, const QuantumNumbers& qn) {
    if (p.a3 != 0.0) {
        throw domain_error("energy_pseudoharmonic_a3zero: requires a3 == 0");
    }
    return energy_pseudoharmonic(p, qn);
}

/// 3-D isotropic oscillator, hbar omega (n' + 3/2) with n' = 2n + l.
inline double energy_harmonic_oscillator(double omega, int n_prime, double hbar = 1.0) {
    if (!(omega > 0.0)) {
        throw domain_error("energy_harmonic_oscillator: omega must be positive");
    }
    if (n_prime < 0) {
        throw domain_error("energy_harmonic_oscillator: n' must be non-negative");
    }
    return hbar * omega * (n_prime + 1.5);
}

/// Decay constant epsilon of a Mie bound state, -delta^2 / (2 (n + gamma + 1/2)).
inline double mie_decay_constant(const MieParams& p, const QuantumNumbers& qn) {
    detail::require_valid(qn);
    if (!(p.b < 0.0)) {
        throw no_bound_state_error("mie: b >= 0 admits no bound states");
    }
    const auto d = derive_mie(p, qn.ell);
    return -d.delta_sq / (2.0 * (qn.n + d.gamma + 0.5));
}

/// E = c - lambda epsilon^2.
inline EnergyLevel energy_mie(const MieParams& p, const QuantumNumbers& qn) {
    const double eps = mie_decay_constant(p, qn);
    return {qn, p.c - p.lambda * eps * eps};
}

/// Inverts the quantization condition: n = -delta^2/(2 epsilon) - (2 gamma + 1)/2.
inline double mie_radial_number_from_decay(const MieParams& p, int ell, double epsilon) {
    const auto d = derive_mie(p, ell);
    return -d.delta_sq / (2.0 * epsilon) - (2.0 * d.gamma + 1.0) / 2.0;
}

inline EnergyLevel energy_level(const PseudoharmonicParams& p, const QuantumNumbers& qn) {
    return energy_pseudoharmonic(p, qn);
}

inline EnergyLevel energy_level(const MieParams& p, const QuantumNumbers& qn) { return energy_mie(p, qn); }

enum class LevelRule {
    ell_up_to_n,      // 0 <= l <= n, the layout of the reference tables
    ell_up_to_n_max,  // 0 <= l <= n_max for every n
};

/// Quantum number pairs ordered by n, then l.
inline std::vector<QuantumNumbers> level_indices(int n_max, LevelRule rule = LevelRule::ell_up_to_n) {
    if (n_max < 0) {
        throw domain_error("level table: n_max must be non-negative");
    }
    std::vector<QuantumNumbers> out;
    for (int n = 0; n <= n_max; ++n) {
        const int l_max = rule == LevelRule::ell_up_to_n ? n : n_max;
        for (int l = 0; l <= l_max; ++l) {
            out.push_back({n, l});
        }
    }
    return out;
}

template <typename Params>
std::vector<EnergyLevel> level_table(const Params& p, int n_max, LevelRule rule = LevelRule::ell_up_to_n) {
    std::vector<EnergyLevel> out;
    for (const auto& qn : level_indices(n_max, rule)) {
        out.push_back(energy_level(p, qn));
    }
    return out;
}

}  // namespace radspec
