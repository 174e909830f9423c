#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "radspec/errors.hpp"

namespace radspec {

struct QuadratureOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int initial_panels = 32;
    int max_panels = 20000;
};

struct QuadratureResult {
    double value;
    double error;  // sum of |K15 - G7| over the final panels
    int panels;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes 1, 3, 5 and 7 of the Kronrod set.
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F>
Panel gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * gk15_weights[7];
    double gauss = fc * g7_weights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk15_nodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += gk15_weights[j] * pair;
        if (j % 2 == 1) {
            gauss += g7_weights[j / 2] * pair;
        }
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/**
 * Globally adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
 *
 * The interval is first cut into `initial_panels` equal pieces so that
 * narrow peaks are not missed by the first sampling; the panel with the
 * largest error estimate is then bisected until the summed estimate meets
 * max(abs_tol, rel_tol * |I|). Endpoints are never evaluated.
 */
template <typename F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureOptions& opts = {}) {
    if (!(b > a)) {
        throw domain_error("integrate: require a < b");
    }
    std::priority_queue<detail::Panel> panels;
    double total = 0.0;
    double error = 0.0;
    const int n0 = std::max(1, opts.initial_panels);
    const double width = (b - a) / n0;
    for (int i = 0; i < n0; ++i) {
        const double lo = a + i * width;
        const double hi = i + 1 == n0 ? b : lo + width;
        auto p = detail::gk15(f, lo, hi);
        total += p.value;
        error += p.error;
        panels.push(p);
    }
    while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (static_cast<int>(panels.size()) >= opts.max_panels || !std::isfinite(total)) {
            std::ostringstream msg;
            msg << "integrate: no convergence on [" << a << ", " << b << "] after " << panels.size()
                << " panels; estimate " << total << ", error " << error;
            throw numerical_error(msg.str());
        }
        const auto worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    double value = 0.0;
    double err = 0.0;
    const int count = static_cast<int>(panels.size());
    while (!panels.empty()) {
        value += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    return {value, err, count};
}

}  // namespace radspec
