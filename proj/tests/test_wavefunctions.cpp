#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "radspec/oracle.hpp"
#include "radspec/wavefunctions.hpp"

using namespace radspec;

namespace {

constexpr PseudoharmonicParams oscillator{0.5, 0.0, 0.0, 0.5};
constexpr PseudoharmonicParams natural_ph{1.0, 1.0, 0.0, 0.5};
constexpr MieParams hydrogen{0.0, -1.0, 0.0, 0.5};
constexpr MieParams natural_kratzer{2.0, -4.0, 2.0, 0.5};

// argmax of r^(nu+1) exp(-mu r^2 / 2) for the N2 ground state, sqrt((nu+1)/mu),
// evaluated at 40 digits.
constexpr double n2_ground_peak = 1.0952506820868172789;

std::vector<double> dense_samples(const RadialWavefunction& wf, int points = 20000) {
    const auto [lo, hi] = wf.support();
    std::vector<double> out;
    for (int i = 1; i <= points; ++i) {
        out.push_back(wf(lo + (hi - lo) * i / points));
    }
    return out;
}

struct Case {
    const char* name;
    std::variant<PseudoharmonicParams, MieParams> pot;
};

std::vector<Case> all_cases() {
    std::vector<Case> out{{"natural pseudoharmonic", natural_ph}, {"natural kratzer", natural_kratzer},
                          {"hydrogen", hydrogen}};
    for (const auto& mol : builtin_molecules()) {
        out.push_back({"molecule pseudoharmonic", pseudoharmonic_from_molecule(mol)});
        out.push_back({"molecule kratzer", mie_from_molecule(mol)});
    }
    return out;
}

RadialWavefunction make(const Case& c, QuantumNumbers qn) {
    return std::visit([&](const auto& p) { return radial_wavefunction(p, qn); }, c.pot);
}

}  // namespace

TEST(Wavefunctions, OscillatorGroundState) {
    const auto wf = radial_pseudoharmonic(oscillator, {0, 0});
    const double n = 2.0 / std::pow(std::numbers::pi, 0.25);
    EXPECT_NEAR(wf.norm_constant(), n, 1e-14);
    EXPECT_NEAR(quadrature_norm(wf), 1.0, 1e-12);
    for (double r : {0.1, 1.0, 2.5}) {
        EXPECT_NEAR(wf(r), n * r * std::exp(-0.5 * r * r), 1e-14);
    }
    const std::vector<double> grid{1.0};
    const auto s = sample(wf, grid);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s[0].value, wf.norm_constant() * std::exp(-0.5), 1e-15);
}

TEST(Wavefunctions, HydrogenGroundState) {
    const auto wf = radial_mie(hydrogen, {0, 0});
    EXPECT_NEAR(wf.decay_scale(), 1.0, 1e-15);
    for (double r : {0.1, 1.0, 7.0}) {
        EXPECT_NEAR(wf(r), 2.0 * r * std::exp(-r), 1e-14);
    }
    // <1/r> = 1 for the Coulomb ground state.
    const auto [lo, hi] = wf.support();
    const double inv_r = integrate([&](double r) { return wf(r) * wf(r) / r; }, lo, hi).value;
    EXPECT_NEAR(inv_r, 1.0, 1e-10);
}

TEST(Wavefunctions, NodeCounts) {
    EXPECT_EQ(oracle::count_nodes(dense_samples(radial_pseudoharmonic(oscillator, {2, 1}))), 2);
    EXPECT_EQ(oracle::count_nodes(dense_samples(radial_mie(hydrogen, {3, 0}))), 3);
    EXPECT_EQ(oracle::count_nodes(dense_samples(radial_mie(hydrogen, {4, 0}))), 4);
}

TEST(Wavefunctions, N2GroundStatePeaksAtEquilibrium) {
    const auto wf = radial_pseudoharmonic(pseudoharmonic_from_molecule(find_molecule("N2")), {0, 0});
    // Golden-section search for max |R| on [1.0, 1.2].
    double a = 1.0, b = 1.2;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200; ++i) {
        const double c = b - g * (b - a);
        const double d = a + g * (b - a);
        if (std::abs(wf(c)) > std::abs(wf(d))) {
            b = d;
        } else {
            a = c;
        }
    }
    EXPECT_NEAR(0.5 * (a + b), n2_ground_peak, 1e-7);
    EXPECT_NEAR(0.5 * (a + b), 1.0940, 2e-3);
}

TEST(Wavefunctions, SampleContract) {
    const auto wf = radial_pseudoharmonic(oscillator, {1, 0});
    EXPECT_TRUE(sample(wf, std::vector<double>{}).empty());
    EXPECT_THROW(sample(wf, std::vector<double>{0.0, 1.0}), domain_error);
    EXPECT_THROW(sample(wf, std::vector<double>{1.0, 0.5}), domain_error);
    EXPECT_THROW(wf(-1.0), domain_error);

    const auto grid = uniform_grid(2.0, 5);
    const auto a = sample(wf, grid);
    const auto b = sample(wf, grid);
    ASSERT_EQ(a.size(), 5u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].value, b[i].value);
    }
    EXPECT_EQ(a.back().r, 2.0);
}

TEST(Wavefunctions, CsvIsLossless) {
    const auto wf = radial_mie(natural_kratzer, {2, 1});
    const auto samples = sample(wf, uniform_grid(30.0, 50));
    std::ostringstream out;
    write_csv(out, samples);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "r,R");
    for (const auto& s : samples) {
        ASSERT_TRUE(std::getline(in, line));
        const auto comma = line.find(',');
        EXPECT_EQ(std::stod(line.substr(0, comma)), s.r);
        EXPECT_EQ(std::stod(line.substr(comma + 1)), s.value);
    }
}

TEST(Wavefunctions, FigureDefaultsDecay) {
    for (const auto& qn : std::vector<QuantumNumbers>{{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}}) {
        const auto ph = radial_pseudoharmonic(natural_ph, qn);
        const auto ph_samples = sample(ph, uniform_grid(8.0, 1000));
        EXPECT_LT(std::abs(ph_samples.back().value), 1e-3);

        const auto kr = radial_mie(natural_kratzer, qn);
        // Sign at large r is (-1)^n: the n = 1 states approach zero from below.
        EXPECT_EQ(std::signbit(ph(7.0)), qn.n == 1);
        EXPECT_EQ(std::signbit(kr(30.0)), qn.n == 1);
    }
}

TEST(Wavefunctions, UnnormalizedQuadratureNorm) {
    EXPECT_NEAR(quadrature_norm([](double r) { return r * std::exp(-r); }, 0.0, 60.0), 0.25, 1e-13);
}

TEST(Wavefunctions, NoBoundStates) {
    EXPECT_THROW(radial_mie({1.0, 1.0, 0.0, 0.5}, {0, 0}), no_bound_state_error);
}

TEST(Wavefunctions, NormalizationOrthogonalityNodes) {
    for (const auto& c : all_cases()) {
        for (int l = 0; l <= 5; ++l) {
            std::vector<RadialWavefunction> states;
            for (int n = l; n <= 5; ++n) {
                states.push_back(make(c, {n, l}));
                const auto& wf = states.back();
                EXPECT_NEAR(quadrature_norm(wf), 1.0, 1e-8) << c.name << " n=" << n << " l=" << l;
                EXPECT_EQ(oracle::count_nodes(dense_samples(wf)), n) << c.name << " n=" << n << " l=" << l;
            }
            for (std::size_t i = 0; i < states.size(); ++i) {
                for (std::size_t j = i + 1; j < states.size(); ++j) {
                    EXPECT_LT(std::abs(overlap(states[i], states[j])), 1e-8) << c.name << " l=" << l;
                }
            }
        }
    }
}

TEST(Wavefunctions, ClosedFormConstantsMatchQuadrature) {
    for (const auto& c : all_cases()) {
        for (const auto& qn : level_indices(5)) {
            const auto wf = make(c, qn);
            // The pseudoharmonic state carries the closed-form constant; the Mie
            // state carries the quadrature-corrected one.
            if (wf.family() == Family::pseudoharmonic) {
                EXPECT_NEAR(std::sqrt(quadrature_norm(wf)), 1.0, 1e-10) << c.name;
            } else {
                EXPECT_NEAR(wf.log_norm(), wf.log_analytic_norm(), 1e-10) << c.name;
            }
        }
    }
}

TEST(Wavefunctions, SolvesTheRadialEquationToSecondOrder) {
    for (const auto& c : all_cases()) {
        for (const QuantumNumbers qn : {QuantumNumbers{0, 0}, QuantumNumbers{1, 1}, QuantumNumbers{3, 2}}) {
            const auto wf = make(c, qn);
            const auto prob = std::visit(
                [&](const auto& p) -> oracle::RadialProblem {
                    using P = std::decay_t<decltype(p)>;
                    if constexpr (std::is_same_v<P, PseudoharmonicParams>) {
                        return {[p](double r) { return eval_pseudoharmonic(p, r); }, p.lambda, qn.ell};
                    } else {
                        return {[p](double r) { return eval_mie(p, r); }, p.lambda, qn.ell};
                    }
                },
                c.pot);
            const auto [lo, hi] = wf.support();
            const double start = std::max(lo, 0.05 * hi);
            auto residual = [&](int points) {
                oracle::UniformSamples s{start, (hi - start) / (points - 1), {}};
                for (int i = 0; i < points; ++i) {
                    s.values.push_back(wf(start + i * s.h));
                }
                return oracle::residual_norm(prob, wf.energy(), s);
            };
            const double coarse = residual(1601);
            const double fine = residual(3201);
            const double order = std::log2(coarse / fine);
            EXPECT_NEAR(order, 2.0, 0.2) << c.name << " n=" << qn.n << " l=" << qn.ell;
        }
    }
}
