#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "radspec/errors.hpp"
#include "radspec/potentials.hpp"
#include "radspec/quadrature.hpp"
#include "radspec/specfun.hpp"
#include "radspec/spectra.hpp"

namespace radspec {

enum class Family { pseudoharmonic, mie };

/**
 * Normalized radial function R(r) of a bound state.
 *
 * Both families share one shape once written in the scaled variable
 * z = k r^p:
 *
 *     R(r) = N r^s exp(-z/2) 1F1(-n; sigma; z)
 *
 *     pseudoharmonic: z = mu r^2,      s = nu + 1,      sigma = nu + 3/2
 *     Mie:            z = 2 eps r,     s = gamma + 1/2, sigma = 2 gamma + 1
 *
 * Evaluation happens in log space: for molecular parameters s is a few
 * hundred and N alone overflows a double.
 */
class RadialWavefunction {
public:
    using Derived = std::variant<DerivedPseudoharmonic, DerivedMie>;

    Family family() const noexcept { return family_; }
    const QuantumNumbers& qn() const noexcept { return qn_; }
    const Derived& derived() const noexcept { return derived_; }
    double energy() const noexcept { return energy_; }

    /// mu (Angstrom^-2) for pseudoharmonic states, epsilon (Angstrom^-1) for Mie states.
    double decay_scale() const noexcept { return decay_scale_; }

    /// log of the closed-form normalization constant.
    double log_analytic_norm() const noexcept { return log_analytic_norm_; }
    /// log of the constant actually applied (closed form, possibly rescaled by quadrature).
    double log_norm() const noexcept { return log_norm_; }
    double norm_constant() const noexcept { return std::exp(log_norm_); }

    /// Interval outside which R^2 is below ~1e-14 of its mass. `lower` may be 0.
    std::pair<double, double> support() const noexcept { return {r_lo_, r_hi_}; }

    double operator()(double r) const {
        if (!(r > 0.0)) {
            throw domain_error("wavefunction: r must be positive");
        }
        const double z = z_scale_ * (z_power_ == 2 ? r * r : r);
        const double poly = confluent_1f1_neg_int(qn_.n, sigma_, z);
        if (poly == 0.0) {
            return 0.0;
        }
        const double log_mag = log_norm_ + s_ * std::log(r) - 0.5 * z + std::log(std::abs(poly));
        return std::copysign(std::exp(log_mag), poly);
    }

private:
    RadialWavefunction() = default;

    void finish() {
        // R^2 dr becomes z^(k-1) e^-z |poly|^2 dz, so the mass sits inside a
        // Gamma(k) window; 10 standard deviations plus 40 e-folds of slack.
        const double k = (2.0 * s_ + 2.0 * qn_.n * z_power_ + 1.0) / z_power_;
        const double z_hi = k + 10.0 * std::sqrt(k) + 40.0;
        const double z_lo = std::max(0.0, k - 10.0 * std::sqrt(k) - 10.0);
        auto to_r = [&](double z) { return z_power_ == 2 ? std::sqrt(z / z_scale_) : z / z_scale_; };
        r_hi_ = to_r(z_hi);
        r_lo_ = to_r(z_lo);
    }

    friend RadialWavefunction radial_pseudoharmonic(const PseudoharmonicParams&, const QuantumNumbers&);
    friend RadialWavefunction radial_mie(const MieParams&, const QuantumNumbers&);

    Family family_ = Family::pseudoharmonic;
    QuantumNumbers qn_;
    Derived derived_;
    double energy_ = 0.0;
    double decay_scale_ = 0.0;
    double s_ = 0.0;
    double sigma_ = 1.0;
    double z_scale_ = 1.0;
    int z_power_ = 1;
    double log_analytic_norm_ = 0.0;
    double log_norm_ = 0.0;
    double r_lo_ = 0.0;
    double r_hi_ = 1.0;
};

/// Integral of f(r)^2 over (lower, upper].
template <typename F>
double quadrature_norm(const F& f, double lower, double upper) {
    auto sq = [&](double r) {
        const double v = f(r);
        return v * v;
    };
    return integrate(sq, lower, upper).value;
}

inline double quadrature_norm(const RadialWavefunction& wf) {
    const auto [lo, hi] = wf.support();
    return quadrature_norm(wf, lo, hi);
}

/// <a|b> = integral of R_a R_b dr over the union of both supports.
inline double overlap(const RadialWavefunction& a, const RadialWavefunction& b) {
    const double lo = std::min(a.support().first, b.support().first);
    const double hi = std::max(a.support().second, b.support().second);
    return integrate([&](double r) { return a(r) * b(r); }, lo, hi).value;
}

namespace detail {

inline constexpr double normalization_check_tolerance = 1e-8;

}  // namespace detail

/// Closed-form constant
///   N = mu^((nu+3/2)/2) sqrt(2 Gamma(n+nu+3/2) / n!) / Gamma(nu+3/2),
/// checked against quadrature before the state is handed out.
inline RadialWavefunction radial_pseudoharmonic(const PseudoharmonicParams& p, const QuantumNumbers& qn) {
    const auto level = energy_pseudoharmonic(p, qn);
    const auto d = derive_pseudoharmonic(p, qn.ell);
    const double n = qn.n;

    RadialWavefunction wf;
    wf.family_ = Family::pseudoharmonic;
    wf.qn_ = qn;
    wf.derived_ = d;
    wf.energy_ = level.energy;
    wf.decay_scale_ = d.mu;
    wf.s_ = d.nu + 1.0;
    wf.sigma_ = d.nu + 1.5;
    wf.z_scale_ = d.mu;
    wf.z_power_ = 2;
    wf.log_analytic_norm_ = 0.5 * (d.nu + 1.5) * std::log(d.mu) +
                            0.5 * (std::log(2.0) + log_gamma_ratio({n + d.nu + 1.5}, {n + 1.0})) -
                            log_gamma(d.nu + 1.5);
    wf.log_norm_ = wf.log_analytic_norm_;
    wf.finish();

    const double norm = quadrature_norm(wf);
    if (!(std::abs(norm - 1.0) < detail::normalization_check_tolerance)) {
        throw numerical_error("radial_pseudoharmonic: quadrature norm " + std::to_string(norm) +
                              " deviates from 1 for n=" + std::to_string(qn.n) +
                              ", l=" + std::to_string(qn.ell));
    }
    return wf;
}

/// Closed-form constant
///   N = (2 eps)^(gamma+1) sqrt(Gamma(n+2gamma+1) / (n! (2n+2gamma+1))) / Gamma(2gamma+1),
/// after which the quadrature norm rescales N so that the integral of R^2 is 1.
inline RadialWavefunction radial_mie(const MieParams& p, const QuantumNumbers& qn) {
    const double eps = mie_decay_constant(p, qn);
    const auto level = energy_mie(p, qn);
    const auto d = derive_mie(p, qn.ell);
    const double n = qn.n;
    const double g = d.gamma;

    RadialWavefunction wf;
    wf.family_ = Family::mie;
    wf.qn_ = qn;
    wf.derived_ = d;
    wf.energy_ = level.energy;
    wf.decay_scale_ = eps;
    wf.s_ = g + 0.5;
    wf.sigma_ = 2.0 * g + 1.0;
    wf.z_scale_ = 2.0 * eps;
    wf.z_power_ = 1;
    wf.log_analytic_norm_ = (g + 1.0) * std::log(2.0 * eps) +
                            0.5 * (log_gamma_ratio({n + 2.0 * g + 1.0}, {n + 1.0}) -
                                   std::log(2.0 * n + 2.0 * g + 1.0)) -
                            log_gamma(2.0 * g + 1.0);
    wf.log_norm_ = wf.log_analytic_norm_;
    wf.finish();

    const double norm = quadrature_norm(wf);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw numerical_error("radial_mie: quadrature norm is not positive and finite");
    }
    wf.log_norm_ -= 0.5 * std::log(norm);
    return wf;
}

inline RadialWavefunction radial_wavefunction(const PseudoharmonicParams& p, const QuantumNumbers& qn) {
    return radial_pseudoharmonic(p, qn);
}

inline RadialWavefunction radial_wavefunction(const MieParams& p, const QuantumNumbers& qn) {
    return radial_mie(p, qn);
}

struct Sample {
    double r;
    double value;
};

/// Pointwise R(r) on an ascending grid of positive radii.
inline std::vector<Sample> sample(const RadialWavefunction& wf, std::span<const double> grid) {
    std::vector<Sample> out;
    out.reserve(grid.size());
    double prev = 0.0;
    for (double r : grid) {
        if (!(r > 0.0)) {
            throw domain_error("sample: grid points must be positive");
        }
        if (!out.empty() && !(r > prev)) {
            throw domain_error("sample: grid must be strictly ascending");
        }
        out.push_back({r, wf(r)});
        prev = r;
    }
    return out;
}

/// n equally spaced points on (0, r_max], excluding 0.
inline std::vector<double> uniform_grid(double r_max, int points) {
    if (!(r_max > 0.0) || points < 1) {
        throw domain_error("uniform_grid: need r_max > 0 and at least one point");
    }
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = r_max * (i + 1) / points;
    }
    return grid;
}

/// 17 significant digits: parses back to the same double.
inline std::string format_lossless(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& out, std::span<const Sample> samples) {
    out << "r,R\n";
    for (const auto& s : samples) {
        out << format_lossless(s.r) << ',' << format_lossless(s.value) << '\n';
    }
}

}  // namespace radspec
