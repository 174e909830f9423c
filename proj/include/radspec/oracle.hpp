#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "radspec/errors.hpp"

// Numerov shooting solver for the radial equation
//
//     R'' = [ l(l+1)/r^2 + (V(r) - E) / lambda ] R,   lambda = hbar^2 / 2m.
//
// Nothing here knows about the closed-form spectra; the only inputs are an
// evaluable potential, lambda and l.

namespace radspec::oracle {

struct RadialProblem {
    std::function<double(double)> potential;
    double lambda = 0.5;
    int ell = 0;

    double effective_potential(double r) const {
        return potential(r) + lambda * static_cast<double>(ell) * (ell + 1) / (r * r);
    }
};

/**
 * Discretization and search settings.
 *
 * The grid is uniform in x = ln r with `steps` intervals between r_min and
 * r_max; on it the substitution R = sqrt(r) u turns the radial equation into
 * u'' = g(x) u with g bounded as r -> 0, which is what Numerov needs.
 */
struct NumerovConfig {
    double r_min = 1e-4;
    double r_max = 50.0;
    int steps = 20000;
    double energy_lo = -1.0;
    double energy_hi = 1.0;
    double energy_tol = 1e-12;
    int max_bisections = 200;
    /// Energies at or above this value are never probed (continuum threshold).
    std::optional<double> energy_ceiling;
};

inline void validate(const NumerovConfig& cfg) {
    if (!(cfg.r_min > 0.0) || !(cfg.r_max > cfg.r_min)) {
        throw domain_error("NumerovConfig: require 0 < r_min < r_max");
    }
    if (cfg.steps < 1000) {
        throw domain_error("NumerovConfig: steps must be at least 1000");
    }
    if (!(cfg.energy_tol > 0.0)) {
        throw domain_error("NumerovConfig: energy_tol must be positive");
    }
    if (!(cfg.energy_hi > cfg.energy_lo)) {
        throw domain_error("NumerovConfig: empty energy bracket");
    }
}

struct Trajectory {
    std::vector<double> r;
    std::vector<double> values;  // R(r), arbitrary overall scale
    int nodes = 0;               // sign changes of the raw solution
    int tail_sign = 0;           // sign of R(r_max)
};

namespace detail {

inline constexpr double rescale_threshold = 1e150;

}  // namespace detail

/// Outward Numerov integration at fixed energy.
///
/// The start follows the small-r power law R ~ r^s, whose exponent satisfies
/// (s - 1/2)^2 = g(x_min); overflow is handled by rescaling the whole stored
/// trajectory, so the integration never aborts.
inline Trajectory numerov_integrate(const RadialProblem& prob, double energy, const NumerovConfig& cfg) {
    if (!(cfg.r_min > 0.0) || !(cfg.r_max > cfg.r_min) || cfg.steps < 2) {
        throw domain_error("numerov_integrate: invalid grid");
    }
    const int n = cfg.steps;
    const double x0 = std::log(cfg.r_min);
    const double h = (std::log(cfg.r_max) - x0) / n;
    const double h2 = h * h / 12.0;
    const double centrifugal = (prob.ell + 0.5) * (prob.ell + 0.5);

    Trajectory out;
    out.r.resize(static_cast<std::size_t>(n) + 1);
    out.values.resize(static_cast<std::size_t>(n) + 1);

    auto g_at = [&](double r) { return r * r * (prob.potential(r) - energy) / prob.lambda + centrifugal; };

    double r_prev = cfg.r_min;
    double r_cur = std::exp(x0 + h);
    double g_prev = g_at(r_prev);
    double g_cur = g_at(r_cur);

    const double kappa = std::sqrt(std::max(g_prev, 0.0));
    double u_prev = 1.0;
    double u_cur = std::exp(kappa * h);
    if (!std::isfinite(u_cur)) {
        u_prev = 0.0;
        u_cur = 1.0;
    }

    out.r[0] = r_prev;
    out.values[0] = std::sqrt(r_prev) * u_prev;
    out.r[1] = r_cur;
    out.values[1] = std::sqrt(r_cur) * u_cur;

    double last_nonzero = u_cur != 0.0 ? u_cur : u_prev;
    for (int i = 1; i < n; ++i) {
        const double r_next = std::exp(x0 + (i + 1) * h);
        const double g_next = g_at(r_next);
        const double u_next =
            (2.0 * (1.0 + 5.0 * h2 * g_cur) * u_cur - (1.0 - h2 * g_prev) * u_prev) / (1.0 - h2 * g_next);

        if (u_next != 0.0) {
            if ((u_next > 0.0) != (last_nonzero > 0.0)) {
                ++out.nodes;
            }
            last_nonzero = u_next;
        }
        out.r[static_cast<std::size_t>(i) + 1] = r_next;
        out.values[static_cast<std::size_t>(i) + 1] = std::sqrt(r_next) * u_next;

        u_prev = u_cur;
        u_cur = u_next;
        g_prev = g_cur;
        g_cur = g_next;

        if (std::abs(u_cur) > detail::rescale_threshold) {
            const double s = 1.0 / detail::rescale_threshold;
            u_prev *= s;
            u_cur *= s;
            last_nonzero *= s;
            for (int j = 0; j <= i + 1; ++j) {
                out.values[static_cast<std::size_t>(j)] *= s;
            }
        }
    }
    out.tail_sign = u_cur > 0.0 ? 1 : (u_cur < 0.0 ? -1 : 0);
    return out;
}

/// Strict sign changes, ignoring samples inside a dead-band of 1e-12 max|R|.
inline int count_nodes(std::span<const double> samples) {
    if (samples.empty()) {
        throw domain_error("count_nodes: no samples");
    }
    double peak = 0.0;
    for (double v : samples) {
        peak = std::max(peak, std::abs(v));
    }
    const double band = 1e-12 * peak;
    int nodes = 0;
    int sign = 0;
    for (double v : samples) {
        if (std::abs(v) <= band) {
            continue;
        }
        const int s = v > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign) {
            ++nodes;
        }
        sign = s;
    }
    return nodes;
}

struct Eigenvalue {
    double energy;
    int nodes;        // node count of the lower bracket end at convergence
    int bisections;
    double bracket_width;
};

/**
 * Bisection on E steered by the oscillation theorem: the outward solution
 * has at most n_target nodes strictly below the n_target-th level and more
 * above it (the extra node is the tail crossing zero, i.e. the divergence
 * sign flipping). The bracket is widened by doubling, up to 60 times, when
 * it does not straddle the level.
 */
inline Eigenvalue solve_eigenvalue(const RadialProblem& prob, int n_target, const NumerovConfig& cfg) {
    validate(cfg);
    if (n_target < 0) {
        throw domain_error("solve_eigenvalue: n_target must be non-negative");
    }
    auto nodes_at = [&](double e) { return numerov_integrate(prob, e, cfg).nodes; };

    double lo = cfg.energy_lo;
    double hi = cfg.energy_hi;
    if (cfg.energy_ceiling) {
        hi = std::min(hi, *cfg.energy_ceiling);
    }
    constexpr int max_widenings = 60;
    int widen = 0;
    while (nodes_at(lo) > n_target) {
        if (++widen > max_widenings) {
            std::ostringstream msg;
            msg << "solve_eigenvalue: lower bracket exhausted at E=" << lo << " for n=" << n_target;
            throw numerical_error(msg.str());
        }
        const double width = hi - lo;
        hi = lo;
        lo -= 2.0 * width;
    }
    widen = 0;
    while (nodes_at(hi) <= n_target) {
        if (++widen > max_widenings) {
            std::ostringstream msg;
            msg << "solve_eigenvalue: no eigenvalue found for n=" << n_target << ", l=" << prob.ell
                << "; upper bracket reached E=" << hi << " with " << nodes_at(hi) << " nodes";
            throw numerical_error(msg.str());
        }
        const double width = hi - lo;
        lo = hi;
        hi = cfg.energy_ceiling ? hi + 0.5 * (*cfg.energy_ceiling - hi) : hi + 2.0 * width;
    }

    int iterations = 0;
    while (hi - lo > cfg.energy_tol && iterations < cfg.max_bisections) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (nodes_at(mid) > n_target) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++iterations;
    }
    return {0.5 * (lo + hi), nodes_at(lo), iterations, hi - lo};
}

namespace detail {

// Outer classical turning point of V_eff at energy e, searched outward from r_start.
inline double outer_turning_point(const RadialProblem& prob, double e, double r_start, double r_limit) {
    double r = r_start;
    while (prob.effective_potential(r) <= e) {
        r *= 1.001;
        if (r > r_limit) {
            throw numerical_error("auto_config: no outer turning point below r=" + std::to_string(r_limit));
        }
    }
    return r;
}

// Smallest r beyond the turning point with WKB decay integral >= depth.
inline double forbidden_depth(const RadialProblem& prob, double e, double r_turn, double depth,
                              double r_limit) {
    double r = r_turn;
    double acc = 0.0;
    double k_prev = 0.0;
    while (acc < depth) {
        const double dr = r * 1e-3;
        const double k = std::sqrt(std::max(prob.effective_potential(r + dr) - e, 0.0) / prob.lambda);
        acc += 0.5 * (k + k_prev) * dr;
        k_prev = k;
        r += dr;
        if (r > r_limit) {
            return r_limit;
        }
    }
    return r;
}

}  // namespace detail

/**
 * Builds a NumerovConfig from the potential alone.
 *
 * `length_scale` is the natural size of the problem (r0 for a molecule,
 * 1 in natural units). The bracket starts at the minimum of the effective
 * potential and is opened upward until the outward solution has more than
 * n_target nodes; r_max is then placed where the WKB decay exponent at the
 * top of the bracket reaches `tail_depth` e-folds. `resolution` bounds the
 * phase advance per Numerov step.
 */
inline NumerovConfig auto_config(const RadialProblem& prob, int n_target, double length_scale,
                                 std::optional<double> continuum = std::nullopt, double resolution = 0.01,
                                 double tail_depth = 40.0) {
    if (!(length_scale > 0.0)) {
        throw domain_error("auto_config: length_scale must be positive");
    }
    NumerovConfig cfg;
    cfg.r_min = 1e-4 * length_scale;
    cfg.energy_ceiling = continuum;
    const double r_limit = 1e6 * length_scale;

    // Coarse log-grid scan for the minimum of V_eff.
    double v_min = std::numeric_limits<double>::infinity();
    double r_at_min = length_scale;
    for (int i = 0; i <= 4000; ++i) {
        const double r = cfg.r_min * std::pow(1e7, i / 4000.0);
        const double v = prob.effective_potential(r);
        if (v < v_min) {
            v_min = v;
            r_at_min = r;
        }
    }
    cfg.energy_lo = v_min - 1e-9 * (1.0 + std::abs(v_min));

    auto top_for = [&](double e_hi) {
        const double r_turn = detail::outer_turning_point(prob, e_hi, r_at_min, r_limit);
        return detail::forbidden_depth(prob, e_hi, r_turn, tail_depth, r_limit);
    };

    double spread = 0.0;
    for (double r : {0.5 * length_scale, 2.0 * length_scale}) {
        spread = std::max(spread, prob.effective_potential(r) - v_min);
    }
    if (!(spread > 0.0) || !std::isfinite(spread)) {
        spread = 1.0;
    }
    double e_hi = continuum ? v_min + 0.5 * (*continuum - v_min) : v_min + spread;

    constexpr int max_widenings = 60;
    for (int k = 0;; ++k) {
        cfg.energy_hi = e_hi;
        cfg.r_max = top_for(e_hi);
        // Phase resolution at the top of the bracket, stability everywhere.
        double g_allowed = 0.0;
        double g_any = 0.0;
        const int probe = 4000;
        const double span = std::log(cfg.r_max / cfg.r_min);
        for (int i = 0; i <= probe; ++i) {
            const double r = cfg.r_min * std::exp(span * i / probe);
            const double centrifugal = (prob.ell + 0.5) * (prob.ell + 0.5);
            const double g_hi = r * r * (prob.potential(r) - e_hi) / prob.lambda + centrifugal;
            const double g_lo = r * r * (prob.potential(r) - cfg.energy_lo) / prob.lambda + centrifugal;
            g_allowed = std::max(g_allowed, -g_hi);
            g_any = std::max({g_any, std::abs(g_hi), std::abs(g_lo)});
        }
        double h = std::sqrt(6.0 / std::max(g_any, 1.0));
        if (g_allowed > 0.0) {
            h = std::min(h, 2.0 * std::numbers::pi * resolution / std::sqrt(g_allowed));
        }
        h = std::min(h, 2e-3);
        cfg.steps = std::max(1000, static_cast<int>(std::ceil(span / h)));

        if (numerov_integrate(prob, e_hi, cfg).nodes > n_target) {
            break;
        }
        if (k >= max_widenings) {
            throw numerical_error("auto_config: could not bracket level n=" + std::to_string(n_target));
        }
        e_hi = continuum ? e_hi + 0.5 * (*continuum - e_hi) : v_min + 2.0 * (e_hi - v_min);
    }
    cfg.energy_tol = 1e-13 * (1.0 + std::abs(cfg.energy_hi - cfg.energy_lo)) + 1e-15 * std::abs(v_min);
    return cfg;
}

/// Uniformly spaced samples of R in r.
struct UniformSamples {
    double r0;
    double h;
    std::vector<double> values;
};

/// max over interior points of |R''_fd - [l(l+1)/r^2 + (V - E)/lambda] R|, divided by max|R|.
inline double residual_norm(const RadialProblem& prob, double energy, const UniformSamples& samples) {
    const auto& v = samples.values;
    if (v.size() < 5) {
        throw domain_error("residual_norm: need at least 5 samples");
    }
    double peak = 0.0;
    for (double x : v) {
        peak = std::max(peak, std::abs(x));
    }
    if (peak == 0.0) {
        return 0.0;
    }
    const double h = samples.h;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double r = samples.r0 + static_cast<double>(i) * h;
        const double second = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
        const double f = (prob.effective_potential(r) - energy) / prob.lambda;
        worst = std::max(worst, std::abs(second - f * v[i]));
    }
    return worst / peak;
}

}  // namespace radspec::oracle
