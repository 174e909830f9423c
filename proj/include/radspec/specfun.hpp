#pragma once

#include <cmath>
#include <initializer_list>
#include <span>

#include "radspec/errors.hpp"

namespace radspec {

/// log Gamma(x) for x > 0 without touching the global `signgam`.
inline double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw domain_error("log_gamma: argument must be positive");
    }
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

/// sum log Gamma(num[i]) - sum log Gamma(den[i]).
inline double log_gamma_ratio(std::span<const double> num, std::span<const double> den) {
    double acc = 0.0;
    for (double x : num) {
        acc += log_gamma(x);
    }
    for (double x : den) {
        acc -= log_gamma(x);
    }
    return acc;
}

inline double log_gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    return log_gamma_ratio(std::span<const double>(num.begin(), num.size()),
                           std::span<const double>(den.begin(), den.size()));
}

namespace detail {

// Forward recurrence
//   (k+1) L_{k+1} = (2k + 1 + p - x) L_k - (k + p) L_{k-1},
// valid as a polynomial identity for every real p.
inline double laguerre_recurrence(int n, double p, double x) {
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = 1.0 + p - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + p - x) * cur - (k + p) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace detail

/// Associated Laguerre polynomial L_n^p(x), p > -1.
inline double laguerre(int n, double p, double x) {
    if (n < 0) {
        throw domain_error("laguerre: degree must be non-negative");
    }
    if (!(p > -1.0)) {
        throw domain_error("laguerre: parameter p must exceed -1");
    }
    return detail::laguerre_recurrence(n, p, x);
}

/**
 * 1F1(-n; sigma; x), the terminating confluent hypergeometric series.
 *
 * Evaluated as n! / (sigma)_n * L_n^{sigma-1}(x). The Pochhammer product is
 * formed factor by factor as (k+1)/(sigma+k), which stays O(1) per step and
 * never builds a raw factorial.
 */
inline double confluent_1f1_neg_int(int n, double sigma, double x) {
    if (n < 0) {
        throw domain_error("confluent_1f1_neg_int: n must be non-negative");
    }
    double scale = 1.0;
    for (int k = 0; k < n; ++k) {
        const double denom = sigma + k;
        if (denom == 0.0) {
            throw domain_error("confluent_1f1_neg_int: sigma is a non-positive integer > -n");
        }
        scale *= (k + 1.0) / denom;
    }
    return scale * detail::laguerre_recurrence(n, sigma - 1.0, x);
}

}  // namespace radspec
