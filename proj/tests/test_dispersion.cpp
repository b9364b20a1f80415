#include <gtest/gtest.h>

#include <random>

#include "specdisp/dispersion.hpp"

using namespace specdisp;
using namespace specdisp::dispersion;

namespace {

// Solves xi = x sqrt(1 - xi^2) by bisection on sign(x) * [0, 1).
double xi_by_bisection(double x) {
    double lo = 0.0, hi = 1.0;
    const double ax = std::abs(x);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid - ax * std::sqrt(1.0 - mid * mid) > 0.0 ? hi : lo) = mid;
    }
    return std::copysign(0.5 * (lo + hi), x);
}

// Kinetic energy from xi: E0 xi^2 / (2 sqrt(1 - xi^2)) + E0.
double energy_from_xi(double xi, double E0) { return E0 * xi * xi / (2.0 * std::sqrt(1.0 - xi * xi)) + E0; }

// x^2 / sqrt(1 + x^2) from the series sum_k C(-1/2,k) x^{2k+2}, summed independently.
double series_closed(double x) { return x * x / std::sqrt(1.0 + x * x); }

// Composite Simpson on a uniform grid of odd length.
double simpson(const std::vector<double>& f, double h) {
    double s = f.front() + f.back();
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
    return s * h / 3.0;
}

const ParticleParams kNat = ParticleParams::natural(0.1);

}  // namespace

TEST(ParticleParams, DerivedQuantities) {
    const ParticleParams p(2.0, 3.0, 0.5);
    EXPECT_DOUBLE_EQ(p.E0(), 18.0);
    EXPECT_DOUBLE_EQ(p.l0(), 0.5 / 6.0);
    EXPECT_NEAR(p.E0() * p.l0() * p.l0(), p.hbar * p.hbar / p.m0, 1e-15);
    EXPECT_THROW(ParticleParams(0.0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ParticleParams(1.0, 1.0, -1.0), std::invalid_argument);
}

TEST(ParticleParams, NaturalUnits) {
    const auto p = ParticleParams::natural(0.25);
    EXPECT_NEAR(p.E0(), 1.0, 1e-15);
    EXPECT_NEAR(p.hbar, 1.0, 0.0);
    EXPECT_NEAR(p.l0(), 0.25, 1e-15);
    EXPECT_NEAR(ParticleParams::electron().l0(), 3.86e-13, 1e-26);
    EXPECT_NEAR(ParticleParams::neutrino().l0(), 0.000164, 1e-17);
}

TEST(Kinematics, VelocityRatioExamples) {
    const ParticleParams p(2.0, 3.0, 1.0);
    const double mc = p.m0 * p.c;
    EXPECT_EQ(velocity_ratio(0.0, p), 0.0);
    EXPECT_NEAR(velocity_ratio(mc, p), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(velocity_ratio(mc, p), xi_by_bisection(1.0), 1e-14);
    EXPECT_GT(velocity_ratio(1e3 * mc, p), 0.999999);
    EXPECT_LT(velocity_ratio(1e3 * mc, p), 1.0);
}

TEST(Kinematics, VelocityRatioProperties) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> d(0.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double p = d(rng);
        const double xi = velocity_ratio(p, kNat);
        const double x = p / (kNat.m0 * kNat.c);
        EXPECT_NEAR(xi, x * std::sqrt(1.0 - xi * xi), 1e-12);
        EXPECT_DOUBLE_EQ(velocity_ratio(-p, kNat), -xi);
        EXPECT_LT(std::abs(xi), 1.0);
    }
    double prev = -1.0;
    for (double p = -50.0; p <= 50.0; p += 0.25) {
        const double xi = velocity_ratio(p, kNat);
        EXPECT_GT(xi, prev);
        prev = xi;
    }
}

TEST(Kinematics, EnergyOfMomentum) {
    const ParticleParams p(1.5, 2.0, 1.0);
    const double mc = p.m0 * p.c;
    EXPECT_DOUBLE_EQ(energy_of_momentum(0.0, p), p.E0());
    EXPECT_NEAR(energy_of_momentum(mc, p) / p.E0(), 1.0 + 1.0 / (2.0 * std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(energy_of_momentum(mc, p) / p.E0(), 1.3535534, 1e-7);
    EXPECT_NEAR(energy_of_momentum(0.5 * mc, p) / p.E0(), 1.1118034, 1e-7);
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0})
        EXPECT_NEAR(energy_of_momentum(x * mc, p), energy_from_xi(xi_by_bisection(x), p.E0()), 1e-12) << x;
}

TEST(DispersionLaw, ZeroFrequencyIsRestEnergy) {
    for (auto v : {LawVariant::Schrodinger, LawVariant::Relativistic, LawVariant::KleinGordon})
        EXPECT_EQ(dispersion_energy(0.0, DispersionLaw(v, kNat)), kNat.E0());
}

TEST(DispersionLaw, Formulas) {
    const ParticleParams p(2.0, 1.5, 0.7);
    const double g = 0.9, x = p.l0() * g;
    EXPECT_NEAR(DispersionLaw(LawVariant::Schrodinger, p).energy(g), p.E0() + p.hbar * p.hbar * g * g / (2.0 * p.m0), 1e-14);
    EXPECT_NEAR(DispersionLaw(LawVariant::Relativistic, p).energy(g), p.E0() + 0.5 * p.E0() * series_closed(x), 1e-14);
    EXPECT_NEAR(DispersionLaw(LawVariant::KleinGordon, p).energy(g), p.E0() * std::sqrt(1.0 + x * x), 1e-14);
}

TEST(DispersionLaw, BandEdge) {
    const DispersionLaw rel(LawVariant::Relativistic, kNat);
    const double g = (1.0 - 1e-9) / kNat.l0();
    EXPECT_NEAR(rel.energy(g), kNat.E0() * (1.0 + 1.0 / (2.0 * std::sqrt(2.0))), 1e-8);
    EXPECT_THROW(rel.energy(1.0 / kNat.l0()), band_error);
    EXPECT_THROW(rel.energy(-20.0), band_error);
    EXPECT_NO_THROW(DispersionLaw(LawVariant::Schrodinger, kNat).energy(20.0));
}

TEST(DispersionLaw, SchrodingerLimit) {
    const DispersionLaw rel(LawVariant::Relativistic, kNat), sch(LawVariant::Schrodinger, kNat);
    for (double x = 0.01; x <= 0.3 + 1e-12; x += 0.01) {
        const double g = x / kNat.l0();
        const double ks = sch.energy(g) - kNat.E0();
        EXPECT_LE(std::abs(rel.energy(g) - sch.energy(g)) / ks, 0.5 * x * x) << x;
    }
    const double g = 0.1 / kNat.l0();
    EXPECT_LE(std::abs(rel.kinetic(g) - sch.kinetic(g)) / sch.kinetic(g), 0.005);
}

TEST(DispersionLaw, KleinGordonComparison) {
    const DispersionLaw rel(LawVariant::Relativistic, kNat), kg(LawVariant::KleinGordon, kNat);
    for (double x = 0.01; x <= 0.3 + 1e-12; x += 0.01) {
        const double g = x / kNat.l0();
        EXPECT_LE(std::abs(rel.kinetic(g) - kg.kinetic(g)) / kg.kinetic(g), 0.75 * x * x) << x;
    }
}

TEST(DispersionLaw, ThreeDimensional) {
    const DispersionLaw rel(LawVariant::Relativistic, kNat), kg(LawVariant::KleinGordon, kNat);
    const std::vector<double> g{1.0, -2.0, 3.0};
    EXPECT_NEAR(rel.energy(std::span<const double>(g)), kNat.E0() + rel.kinetic(1.0) + rel.kinetic(-2.0) + rel.kinetic(3.0), 1e-15);
    EXPECT_NEAR(kg.energy(std::span<const double>(g)), std::sqrt(1.0 + 0.01 * 14.0), 1e-15);
    EXPECT_EQ(law_from_string("klein_gordon"), LawVariant::KleinGordon);
    EXPECT_THROW(law_from_string("dirac"), std::invalid_argument);
}

TEST(EvolveSpectrum, IdentityAndPeriodicity) {
    const DispersionLaw rel(LawVariant::Relativistic, kNat);
    const auto axis = SpectrumGrid::uniform_axis(-5.0, 5.0, 21);
    const auto grid = SpectrumGrid::sample({axis}, [](std::span<const double> g) { return Complex(std::cos(g[0]), g[0]); });
    const auto same = evolve_spectrum(grid, 0.0, rel);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(same.amplitudes()[i], grid.amplitudes()[i]);

    const double g0 = 3.0;
    const SpectrumGrid single({{g0}}, {Complex(0.3, -0.4)});
    const double period = 2.0 * kPi * kNat.hbar / rel.energy(g0);
    const auto back = evolve_spectrum(single, period, rel);
    EXPECT_LT(std::abs(back.amplitudes()[0] - single.amplitudes()[0]), 1e-12);
}

TEST(EvolveSpectrum, UnitarityAndSemigroup) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto v : {LawVariant::Schrodinger, LawVariant::Relativistic, LawVariant::KleinGordon}) {
        const DispersionLaw law(v, kNat);
        const auto axis = SpectrumGrid::uniform_axis(-9.5, 9.5, 39);
        const auto grid = SpectrumGrid::sample({axis, axis}, [&](std::span<const double>) { return Complex(u(rng), u(rng)); });
        for (int trial = 0; trial < 5; ++trial) {
            const double t1 = 3.0 * (u(rng) + 1.0), t2 = 3.0 * (u(rng) + 1.0);
            const auto a = evolve_spectrum(evolve_spectrum(grid, t1, law), t2, law);
            const auto b = evolve_spectrum(grid, t1 + t2, law);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                EXPECT_LE(std::abs(std::abs(b.amplitudes()[i]) - std::abs(grid.amplitudes()[i])), 1e-15);
                EXPECT_LE(std::abs(a.amplitudes()[i] - b.amplitudes()[i]), 1e-12);
            }
        }
    }
}

TEST(EvolveSpectrum, BandViolation) {
    const DispersionLaw rel(LawVariant::Relativistic, kNat);
    const SpectrumGrid grid({SpectrumGrid::uniform_axis(-10.0, 10.0, 5)}, std::vector<Complex>(5, 1.0));
    EXPECT_THROW(evolve_spectrum(grid, 1.0, rel), band_error);
    EXPECT_NO_THROW(evolve_spectrum(grid, 1.0, DispersionLaw(LawVariant::Schrodinger, kNat)));
}

TEST(Synthesize, SingleModeIsPlaneWave) {
    const double g0 = 1.7;
    const SpectrumGrid atom({{g0}}, {2.0 * kPi});
    const auto s = synthesize(atom, std::vector<double>{-1.0, 0.0, 0.4, 2.5});
    for (std::size_t i = 0; i < 4; ++i) {
        const double x = std::vector<double>{-1.0, 0.0, 0.4, 2.5}[i];
        EXPECT_LT(std::abs(s.values[i] - std::polar(1.0, g0 * x)), 1e-15);
    }
}

TEST(Synthesize, BoxIsSinc) {
    const double a = 2.0;
    for (std::size_t n : {401u, 400u}) {  // even-interval Simpson and the 3/8 tail
        const SpectrumGrid box({SpectrumGrid::uniform_axis(-a, a, n)}, std::vector<Complex>(n, 1.0));
        const std::vector<double> xs{-3.0, -0.5, 0.25, 1.0, 4.0};
        const auto s = synthesize(box, xs);
        for (std::size_t i = 0; i < xs.size(); ++i)
            EXPECT_LT(std::abs(s.values[i] - std::sin(a * xs[i]) / (kPi * xs[i])), 1e-8) << xs[i];
        EXPECT_GE(s.error_estimate, 0.0);
    }
}

TEST(Synthesize, ErrorEstimateTracksTrapezoidGap) {
    const SpectrumGrid coarse({SpectrumGrid::uniform_axis(-2.0, 2.0, 9)}, std::vector<Complex>(9, 1.0));
    const SpectrumGrid fine({SpectrumGrid::uniform_axis(-2.0, 2.0, 129)}, std::vector<Complex>(129, 1.0));
    const std::vector<double> xs{0.5, 1.5, 3.0};
    EXPECT_GT(synthesize(coarse, xs).error_estimate, synthesize(fine, xs).error_estimate);
    EXPECT_THROW(synthesize(coarse, std::vector<std::vector<double>>{{0.0, 1.0}}), std::invalid_argument);
}

TEST(Synthesize, Parseval) {
    const double sigma = 1.0;
    const auto axis = SpectrumGrid::uniform_axis(-8.0, 8.0, 401);
    const auto grid = SpectrumGrid::sample({axis}, [&](std::span<const double> g) {
        return Complex(std::exp(-sigma * sigma * g[0] * g[0]), 0.3 * g[0] * std::exp(-g[0] * g[0]));
    });
    std::vector<double> spec(axis.size());
    for (std::size_t i = 0; i < axis.size(); ++i) spec[i] = std::norm(grid.amplitudes()[i]);
    const double spectral = simpson(spec, axis[1] - axis[0]) / (2.0 * kPi);

    const auto xs = SpectrumGrid::uniform_axis(-25.0, 25.0, 1001);
    const auto y = synthesize(grid, xs).values;
    std::vector<double> pos(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pos[i] = std::norm(y[i]);
    EXPECT_NEAR(simpson(pos, xs[1] - xs[0]), spectral, 1e-4);
}

TEST(Synthesize, ThreeDimensionalSeparable) {
    const auto axis = SpectrumGrid::uniform_axis(-1.0, 1.0, 41);
    const auto grid = SpectrumGrid::sample({axis, axis, axis}, [](std::span<const double>) { return Complex(1.0); });
    const std::vector<std::vector<double>> pts{{0.3, -0.7, 1.1}};
    const auto s = synthesize(grid, pts);
    double expected = 1.0;
    for (double x : pts[0]) expected *= std::sin(x) / (kPi * x);
    EXPECT_LT(std::abs(s.values[0] - expected), 1e-8);
}

TEST(Synthesize, GaussianSpreadingUnderSchrodinger) {
    const double sigma = 1.0, t = 50.0;
    const DispersionLaw sch(LawVariant::Schrodinger, kNat);
    const auto axis = SpectrumGrid::uniform_axis(-8.0, 8.0, 801);
    const auto grid = SpectrumGrid::sample({axis}, [&](std::span<const double> g) { return Complex(std::exp(-sigma * sigma * g[0] * g[0])); });
    const auto xs = SpectrumGrid::uniform_axis(-30.0, 30.0, 1201);
    const double h = xs[1] - xs[0];
    auto variance = [&](const SpectrumGrid& gr) {
        const auto y = synthesize(gr, xs).values;
        std::vector<double> m0(xs.size()), m2(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            m0[i] = std::norm(y[i]);
            m2[i] = xs[i] * xs[i] * m0[i];
        }
        return simpson(m2, h) / simpson(m0, h);
    };
    const double l0sq = kNat.l0() * kNat.l0();  // hbar / m0 in natural units
    EXPECT_NEAR(variance(grid), sigma * sigma, 1e-6);
    EXPECT_NEAR(variance(evolve_spectrum(grid, t, sch)), sigma * sigma + std::pow(l0sq * t / (2.0 * sigma), 2), 1e-6);
}

TEST(ModeSum, InitialValueAndModulus) {
    const ModeSum ms({{{1}, Complex(1.0, 0.5)}, {{3}, Complex(-0.2)}, {{7}, Complex(0.0, 0.1)}}, kNat);
    for (double x : {0.3, 1.0, 2.0}) {
        const Complex f = Complex(1.0, 0.5) * std::exp(-x) - 0.2 * std::exp(-3.0 * x) + Complex(0.0, 0.1) * std::exp(-7.0 * x);
        EXPECT_LT(std::abs(mode_sum_solution(ms, x, 0.0) - f), 1e-15);
    }
    const ModeSum one({{{1}, Complex(0.6, -0.8)}}, kNat);
    for (double t : {0.0, 1.0, 17.0, 1e3}) EXPECT_NEAR(std::abs(mode_sum_solution(one, 1.0, t)), std::exp(-1.0), 1e-15);
}

TEST(ModeSum, PhaseRate) {
    const ModeSum one({{{1}, Complex(1.0)}}, kNat);
    const double t = 2.0;
    const double rate = kNat.E0() * 0.01 / (2.0 * kNat.hbar * std::sqrt(0.99));
    const Complex y = mode_sum_solution(one, 1.0, t) * std::exp(1.0);
    EXPECT_NEAR(std::arg(y), -kNat.E0() * t / kNat.hbar + rate * t, 1e-14);
}

TEST(ModeSum, Validation) {
    EXPECT_THROW(ModeSum({{{10}, Complex(1.0)}}, kNat), band_error);  // n = 1/l0 exactly
    EXPECT_THROW(ModeSum({{{0}, Complex(1.0)}}, kNat), std::invalid_argument);
    EXPECT_THROW(ModeSum({{{1}, Complex(1.0)}}, kNat, 0), std::invalid_argument);
    EXPECT_THROW(mode_sum_solution(ModeSum({{{1}, Complex(1.0)}}, kNat), 0.0, 1.0), std::domain_error);
    EXPECT_NO_THROW(ModeSum({{{9}, Complex(1.0)}}, kNat));
}

TEST(ModeSum, SignResolutionSeparates) {
    const auto p = ParticleParams::natural(0.125);
    const ModeSum ms({{{4}, Complex(1.0)}}, p);  // l0 n = 0.5
    std::vector<ProbePoint> probes;
    for (double x : {0.5, 1.0, 2.0})
        for (double t : {0.0, 0.7, 3.0}) probes.push_back({{x}, t});
    const auto r = resolve_phase_sign(ms, probes, 40);
    const double good = std::min(r.residual_plus, r.residual_minus);
    const double bad = std::max(r.residual_plus, r.residual_minus);
    EXPECT_LE(good, 1e-10);
    EXPECT_GE(bad, 1e-2);
    // the wrong sign misses by twice the kinetic rate
    EXPECT_NEAR(bad, 2.0 * 0.25 / (2.0 * std::sqrt(0.75)), 1e-10);
}

TEST(ModeSum, ThreeDimensionalResidual) {
    const auto p = ParticleParams::natural(0.1);
    ModeSum3 ms({{{1, 2, 3}, Complex(1.0)}, {{4, 1, 2}, Complex(0.0, -0.5)}}, p);
    std::vector<ProbePoint> probes{{{0.5, 0.5, 0.5}, 0.0}, {{1.0, 0.3, 0.8}, 2.5}};
    const auto r = resolve_phase_sign(ms, probes, 40);
    EXPECT_LE(std::min(r.residual_plus, r.residual_minus), 1e-10);
    ms.phase_sign = r.sign;
    const Complex y = mode_sum_solution(ms, {0.5, 0.5, 0.5}, 0.0);
    EXPECT_LT(std::abs(y - (std::exp(-3.0) + Complex(0.0, -0.5) * std::exp(-3.5))), 1e-15);
}

TEST(TruncatedResidual, SchrodingerIsOrderZero) {
    const DispersionLaw sch(LawVariant::Schrodinger, kNat);
    const auto grid = SpectrumGrid::sample({SpectrumGrid::uniform_axis(-8.0, 8.0, 33)},
                                           [](std::span<const double> g) { return Complex(std::exp(-0.1 * g[0] * g[0])); });
    const std::vector<ProbePoint> probes{{{0.0}, 0.0}, {{1.5}, 2.0}, {{-3.0}, 10.0}};
    EXPECT_LE(truncated_pde_residual(grid, sch, 0, probes).max, 1e-12);
}

TEST(TruncatedResidual, RelativisticSingleModeConverges) {
    const DispersionLaw rel(LawVariant::Relativistic, kNat);
    const SpectrumGrid single({{0.5 / kNat.l0()}}, {Complex(1.0)});
    const std::vector<ProbePoint> probes{{{0.0}, 0.0}, {{1.0}, 3.0}};
    EXPECT_LE(truncated_pde_residual(single, rel, 40, probes).max, 1e-10);
    double prev = 1.0;
    for (std::size_t K : {5u, 10u, 20u}) {
        const double r = truncated_pde_residual(single, rel, K, probes).max;
        EXPECT_LT(r, prev) << K;
        prev = r;
    }
    const SpectrumGrid outside({{0.95 / kNat.l0()}}, {Complex(1.0)});
    EXPECT_THROW(truncated_pde_residual(outside, rel, 10, probes), band_error);
}

TEST(TruncatedResidual, SymbolMatchesClosedForm) {
    for (double x : {0.1, 0.3, 0.5}) {
        const double gamma = x / kNat.l0();
        EXPECT_NEAR(truncated_symbol(Complex(0.0, gamma), kNat, 60).real(), 0.5 * series_closed(x), 1e-15);
        EXPECT_NEAR(truncated_symbol(Complex(-gamma), kNat, 60).real(), -0.5 * x * x / std::sqrt(1.0 - x * x), 1e-15);
    }
}
