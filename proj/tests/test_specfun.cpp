#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "radspec/quadrature.hpp"
#include "radspec/specfun.hpp"

using namespace radspec;
using boost::multiprecision::cpp_rational;

namespace {

// Terminating series sum_{m<=n} (-n)_m / (sigma)_m x^m / m!, in exact rationals.
cpp_rational hypergeometric_series(int n, const cpp_rational& sigma, const cpp_rational& x) {
    cpp_rational term = 1;
    cpp_rational sum = 1;
    for (int m = 0; m < n; ++m) {
        term *= cpp_rational(m - n) / (sigma + m) * x / (m + 1);
        sum += term;
    }
    return sum;
}

// L_n^p(x) = sum_k (-1)^k C(n+p, n-k) x^k / k!, in exact rationals.
cpp_rational laguerre_series(int n, const cpp_rational& p, const cpp_rational& x) {
    cpp_rational sum = 0;
    for (int k = 0; k <= n; ++k) {
        cpp_rational binom = 1;
        for (int j = 0; j < n - k; ++j) {
            binom *= (cpp_rational(n) + p - j) / (j + 1);
        }
        cpp_rational xk = 1;
        cpp_rational kfact = 1;
        for (int j = 1; j <= k; ++j) {
            xk *= x;
            kfact *= j;
        }
        sum += (k % 2 ? -1 : 1) * binom * xk / kfact;
    }
    return sum;
}

double to_double(const cpp_rational& q) { return static_cast<double>(q); }

}  // namespace

TEST(Specfun, HypergeometricSmallCases) {
    for (double sigma : {0.5, 1.0, 2.5, 17.0}) {
        for (double x : {0.0, 0.3, 5.0}) {
            EXPECT_EQ(confluent_1f1_neg_int(0, sigma, x), 1.0);
        }
    }
    EXPECT_NEAR(confluent_1f1_neg_int(1, 2.0, 2.0), 0.0, 1e-16);
    EXPECT_NEAR(confluent_1f1_neg_int(2, 1.5, 1.0), -1.0 / 15.0, 1e-15);
}

TEST(Specfun, HypergeometricAtOriginIsOne) {
    for (int n = 0; n <= 12; ++n) {
        for (double sigma : {0.5, 1.0, 1.5, 7.25, 438.6}) {
            EXPECT_NEAR(confluent_1f1_neg_int(n, sigma, 0.0), 1.0, 1e-14);
        }
    }
}

TEST(Specfun, HypergeometricRejectsPoles) {
    EXPECT_THROW(confluent_1f1_neg_int(2, 0.0, 1.0), domain_error);
    EXPECT_THROW(confluent_1f1_neg_int(3, -2.0, 1.0), domain_error);
    EXPECT_THROW(confluent_1f1_neg_int(-1, 1.0, 1.0), domain_error);
    // sigma = -3 is no pole for n = 2: (sigma)_2 = (-3)(-2).
    EXPECT_NEAR(confluent_1f1_neg_int(2, -3.0, 1.0), to_double(hypergeometric_series(2, -3, 1)), 1e-15);
    EXPECT_NEAR(confluent_1f1_neg_int(2, -0.5, 1.0),
                to_double(hypergeometric_series(2, cpp_rational(-1, 2), 1)), 1e-14);
}

TEST(Specfun, RecurrenceMatchesExactSeries) {
    const std::vector<cpp_rational> sigmas{cpp_rational(1, 2), 1, cpp_rational(3, 2), cpp_rational(27, 4), 40};
    const std::vector<cpp_rational> xs{0, cpp_rational(1, 3), 2, cpp_rational(15, 2), 20};
    for (int n = 0; n <= 8; ++n) {
        for (const auto& sigma : sigmas) {
            for (const auto& x : xs) {
                const double exact = to_double(hypergeometric_series(n, sigma, x));
                const double got = confluent_1f1_neg_int(n, to_double(sigma), to_double(x));
                EXPECT_LE(std::abs(got - exact), 1e-12 * (1.0 + std::abs(exact)))
                    << "n=" << n << " sigma=" << to_double(sigma) << " x=" << to_double(x);

                const cpp_rational p = sigma - 1;
                if (p > -1) {
                    const double lag = to_double(laguerre_series(n, p, x));
                    EXPECT_LE(std::abs(laguerre(n, to_double(p), to_double(x)) - lag), 1e-12 * (1.0 + std::abs(lag)));
                }
            }
        }
    }
}

TEST(Specfun, LaguerreValues) {
    for (double x : {0.0, 0.7, 3.0}) {
        EXPECT_EQ(laguerre(0, 0.3, x), 1.0);
        EXPECT_DOUBLE_EQ(laguerre(1, 0.0, x), 1.0 - x);
    }
    // Exact rational value -43/48 from the finite series.
    EXPECT_EQ(laguerre_series(3, cpp_rational(1, 2), 2), cpp_rational(-43, 48));
    EXPECT_NEAR(laguerre(3, 0.5, 2.0), -43.0 / 48.0, 1e-15);
    EXPECT_THROW(laguerre(2, -1.0, 1.0), domain_error);
    EXPECT_THROW(laguerre(-1, 0.0, 1.0), domain_error);
}

TEST(Specfun, LaguerreHypergeometricRelation) {
    for (int n = 0; n <= 10; ++n) {
        for (double p : {0.0, 0.5, 2.7, 120.3}) {
            for (double x : {0.1, 1.0, 9.0}) {
                const double coeff = std::exp(log_gamma_ratio({n + p + 1.0}, {n + 1.0, p + 1.0}));
                const double rhs = coeff * confluent_1f1_neg_int(n, p + 1.0, x);
                EXPECT_NEAR(laguerre(n, p, x), rhs, 1e-11 * (1.0 + std::abs(rhs)));
            }
        }
    }
}

TEST(Specfun, LaguerreOrthogonality) {
    for (double q : {0.5, 1.5, 2.7}) {
        for (int n = 0; n <= 6; ++n) {
            for (int m = 0; m <= n; ++m) {
                auto f = [&](double x) { return std::pow(x, q) * std::exp(-x) * laguerre(n, q, x) * laguerre(m, q, x); };
                const double got = integrate(f, 0.0, 150.0, {1e-15, 1e-13, 64, 20000}).value;
                if (n == m) {
                    const double expected = std::exp(log_gamma_ratio({q + n + 1.0}, {n + 1.0}));
                    EXPECT_NEAR(got, expected, 1e-8 * expected) << "q=" << q << " n=" << n;
                } else {
                    const double scale =
                        std::exp(0.5 * log_gamma_ratio({q + n + 1.0, q + m + 1.0}, {n + 1.0, m + 1.0}));
                    EXPECT_NEAR(got, 0.0, 1e-8 * scale) << "q=" << q << " n=" << n << " m=" << m;
                }
            }
        }
    }
}

TEST(Specfun, LogGammaRatio) {
    EXPECT_NEAR(log_gamma_ratio({5.0}, {4.0}), std::log(4.0), 1e-14);
    EXPECT_EQ(log_gamma_ratio({1.0}, {1.0}), 0.0);
    EXPECT_NEAR(log_gamma_ratio({200.5}, {199.5}), std::log(199.5), 1e-12);
    // Gamma(400.5) alone is far beyond double range.
    EXPECT_TRUE(std::isfinite(log_gamma_ratio({400.5, 3.0}, {398.5})));
    EXPECT_NEAR(log_gamma_ratio({400.5, 3.0}, {398.5}), std::log(399.5 * 398.5 * 2.0), 1e-11);
    EXPECT_THROW(log_gamma_ratio({0.0}, {1.0}), domain_error);
    EXPECT_THROW(log_gamma_ratio({1.0}, {-2.5}), domain_error);
}
