#include <gtest/gtest.h>

#include <bit>
#include <numeric>
#include <random>

#include "specdisp/arith.hpp"

using namespace specdisp;
using namespace specdisp::arith;

namespace {

// Trial-division Möbius, independent of the sieve.
int mobius_trial(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

// Expands sum_n B(n) sum_k e^{-knx} and collects the e^{-mx} coefficients.
CoeffSeq expand_lambert(const CoeffSeq& b) {
    CoeffSeq a(b.size());
    for (std::size_t n = 1; n <= b.size(); ++n)
        for (std::size_t k = 1; n * k <= b.size(); ++k) a[n * k] += b[n];
    return a;
}

// Inverts expand_lambert by forward substitution: B(n) = A(n) - sum_{d|n, d<n} B(d).
CoeffSeq solve_lambert(const CoeffSeq& a) {
    CoeffSeq b(a.size());
    for (std::size_t n = 1; n <= a.size(); ++n) {
        Complex s = a[n];
        for (std::size_t d = 1; d < n; ++d)
            if (n % d == 0) s -= b[d];
        b[n] = s;
    }
    return b;
}

CoeffSeq random_seq(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> nd;
    CoeffSeq s(n);
    for (std::size_t i = 1; i <= n; ++i) s[i] = {nd(rng), nd(rng)};
    return s;
}

double max_diff(const CoeffSeq& a, const CoeffSeq& b) {
    double m = 0.0;
    for (std::size_t i = 1; i <= std::max(a.size(), b.size()); ++i) m = std::max(m, std::abs(a.get(i) - b.get(i)));
    return m;
}

}  // namespace

TEST(Mobius, SmallValues) {
    EXPECT_EQ(mobius(1), 1);
    EXPECT_EQ(mobius(4), 0);
    EXPECT_EQ(mobius(6), 1);
    EXPECT_EQ(mobius(30), -1);
}

TEST(Mobius, MatchesTrialDivisionUpTo1000) {
    for (std::uint64_t n = 1; n <= 1000; ++n) ASSERT_EQ(mobius(n), mobius_trial(n)) << n;
}

TEST(Mobius, MultiplicativeOnCoprimePairs) {
    for (std::uint64_t m = 1; m <= 1000; m += 7)
        for (std::uint64_t n = 1; n <= 1000; n += 11)
            if (std::gcd(m, n) == 1) {
                ASSERT_EQ(mobius(m * n), mobius(m) * mobius(n));
            }
}

TEST(Mobius, RejectsZeroAndOutOfBound) {
    EXPECT_THROW(mobius(0), std::invalid_argument);
    EXPECT_THROW(mobius(kDefaultMobiusBound + 1), std::out_of_range);
    MobiusSieve small(50);
    EXPECT_EQ(small(49), 0);
    EXPECT_THROW(small(51), std::out_of_range);
}

TEST(Lambert, DeltaMapsToMobius) {
    CoeffSeq a(100);
    a[1] = 1.0;
    const CoeffSeq b = lambert_convert(a, LambertDirection::TaylorToLambert);
    const CoeffSeq oracle = solve_lambert(a);
    for (std::size_t n = 1; n <= 100; ++n) {
        EXPECT_EQ(b[n], Complex(mobius(n))) << n;
        EXPECT_EQ(oracle[n], Complex(mobius(n))) << n;
    }
}

TEST(Lambert, DeltaLambertGivesAllOnes) {
    CoeffSeq b(64);
    b[1] = 1.0;
    const CoeffSeq a = lambert_convert(b, LambertDirection::LambertToTaylor);
    for (std::size_t n = 1; n <= 64; ++n) EXPECT_EQ(a[n], Complex(1.0));
}

TEST(Lambert, AgreesWithGeometricExpansion) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const CoeffSeq b = random_seq(rng, 64);
        EXPECT_LT(max_diff(lambert_convert(b, LambertDirection::LambertToTaylor), expand_lambert(b)), 1e-12);
        EXPECT_LT(max_diff(lambert_convert(b, LambertDirection::TaylorToLambert), solve_lambert(b)), 1e-12);
    }
}

TEST(Lambert, RoundTripProperty) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const CoeffSeq a = random_seq(rng, 1 + rng() % 64);
        const CoeffSeq back = lambert_convert(lambert_convert(a, LambertDirection::TaylorToLambert),
                                              LambertDirection::LambertToTaylor);
        ASSERT_LT(max_diff(a, back), 1e-13);
    }
}

TEST(Lambert, EvaluationsAgreeForTruncatedSeries) {
    std::mt19937_64 rng(3);
    const CoeffSeq a = random_seq(rng, 64);
    const CoeffSeq b = lambert_convert(a, LambertDirection::TaylorToLambert);
    EXPECT_NEAR(std::abs(evaluate_taylor(a, 2.0) - evaluate_lambert(b, 2.0)), 0.0, 1e-12);
}

TEST(LambertDerivative, OrderZeroIsIdentity) {
    std::mt19937_64 rng(5);
    const CoeffSeq a = random_seq(rng, 16);
    EXPECT_EQ(lambert_derivative(a, 0), a);
}

TEST(LambertDerivative, FirstOrderOfOnes) {
    CoeffSeq a(10);
    for (std::size_t n = 1; n <= 10; ++n) a[n] = 1.0;
    const CoeffSeq d = lambert_derivative(a, 1);
    for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(d[n], Complex(-static_cast<double>(n)));
}

TEST(LambertDerivative, MatchesFiniteDifference) {
    std::mt19937_64 rng(9);
    const CoeffSeq a = random_seq(rng, 64);
    const double x = 2.0, h = 1e-4;
    for (unsigned nu : {1u, 2u}) {
        const CoeffSeq bnu = lambert_convert(lambert_derivative(a, nu), LambertDirection::TaylorToLambert);
        const Complex series = evaluate_lambert(bnu, x);
        Complex fd;
        if (nu == 1) {
            fd = (evaluate_taylor(a, x + h) - evaluate_taylor(a, x - h)) / (2 * h);
        } else {
            fd = (evaluate_taylor(a, x + h) - 2.0 * evaluate_taylor(a, x) + evaluate_taylor(a, x - h)) / (h * h);
        }
        EXPECT_LT(std::abs(series - fd), 1e-6) << "order " << nu;
    }
}

TEST(TwoAdicInverse, IdentityElement) {
    const CoeffSeq a = two_adic_inverse({1.0}, 32);
    for (std::size_t n = 1; n <= 32; ++n) EXPECT_EQ(a[n], Complex(n == 1 ? 1.0 : 0.0));
}

TEST(TwoAdicInverse, TwoTermSequenceIsGeometricOnPowersOfTwo) {
    const Complex beta{0.3, -1.1};
    const CoeffSeq a = two_adic_inverse({1.0, beta}, 128);
    for (std::size_t n = 1; n <= 128; ++n) {
        const bool power_of_two = (n & (n - 1)) == 0;
        if (power_of_two) {
            const int j = std::countr_zero(n);
            EXPECT_LT(std::abs(a[n] - std::pow(-beta, j)), 1e-14) << n;
        } else {
            EXPECT_EQ(a[n], Complex{}) << n;
        }
    }
}

TEST(TwoAdicInverse, GeneralLeadingTerm) {
    // b0 = -g, b1 = 1: a_{2^j} = -(1/g)^{j+1}
    const Complex g{0.8, 0.4};
    const CoeffSeq a = two_adic_inverse({-g, 1.0}, 64);
    for (int j = 0; j <= 6; ++j) EXPECT_LT(std::abs(a[std::size_t{1} << j] + std::pow(1.0 / g, j + 1)), 1e-13);
}

TEST(TwoAdicInverse, DefiningIdentityProperty) {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 100; ++trial) {
        TwoAdicSeq b(1 + rng() % 8);
        for (auto& x : b) x = {nd(rng), nd(rng)};
        b[0] += Complex(3.0 * (b[0].real() >= 0 ? 1 : -1), 0.0);
        const CoeffSeq a = two_adic_inverse(b, 128);
        const CoeffSeq check = two_adic_convolve(b, a);
        for (std::size_t n = 1; n <= 128; ++n) ASSERT_LE(std::abs(check[n] - (n == 1 ? 1.0 : 0.0)), 1e-14);
    }
}

TEST(TwoAdicInverse, SingularLeadingTermThrows) {
    EXPECT_THROW(two_adic_inverse({0.0, 1.0}, 8), singular_error);
    EXPECT_THROW(two_adic_inverse({}, 8), singular_error);
}

TEST(TrigPoly, EvaluationAndDerivative) {
    const TrigPoly v({{0, 2.0}, {1, 1.0}});
    const double x = 0.7;
    EXPECT_LT(std::abs(v(x) - (2.0 + std::exp(-kI * x))), 1e-15);
    EXPECT_LT(std::abs(v.evaluate(x, 1) - (-kI * std::exp(-kI * x))), 1e-15);
    EXPECT_LT(std::abs(v.evaluate_reflected(x) - (2.0 + std::exp(kI * x))), 1e-15);
    EXPECT_LT(std::abs(v.evaluate_reflected(x, 1) - (kI * std::exp(kI * x))), 1e-15);
    const TrigPoly w({{1, 1.0}}, 4.0);
    EXPECT_LT(std::abs(w(1.0) - std::exp(-kI * kPi / 2.0)), 1e-15);
}

TEST(Reciprocal, Constant) {
    const Reciprocal r = reciprocal_trigpoly(TrigPoly::constant(1.0), 8);
    EXPECT_EQ(r.shift, 0);
    EXPECT_EQ(r.series.coeff(0), Complex(1.0));
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(r.series.coeff(n), Complex{});
    EXPECT_EQ(r.grid_residual, 0.0);
}

TEST(Reciprocal, GeometricSeriesAndResidualBound) {
    for (double eps : {0.5, -0.3, 0.9}) {
        for (unsigned k : {4u, 16u, 40u}) {
            const Reciprocal r = reciprocal_trigpoly(TrigPoly({{0, 1.0}, {1, eps}}), k);
            for (unsigned n = 0; n <= k; ++n) EXPECT_NEAR(std::abs(r.series.coeff(n) - std::pow(-eps, n)), 0.0, 1e-13);
            const double bound = 2.0 * std::pow(std::abs(eps), k + 1) / (1.0 - std::abs(eps)) + 1e-14;
            EXPECT_LE(r.grid_residual, bound) << eps << " " << k;
        }
    }
}

TEST(Reciprocal, ConvolutionIdentityExact) {
    const TrigPoly v({{0, 2.0}, {1, Complex(0.5, 0.2)}, {3, -0.3}});
    const Reciprocal r = reciprocal_trigpoly(v, 30);
    for (int m = 0; m <= 30; ++m) {
        Complex s{};
        for (int k = 0; k <= m; ++k) s += v.coeff(k) * r.series.coeff(m - k);
        EXPECT_LT(std::abs(s - (m == 0 ? 1.0 : 0.0)), 1e-14) << m;
    }
}

TEST(Reciprocal, ShiftedMonomial) {
    const Reciprocal r = reciprocal_trigpoly(TrigPoly({{1, 1.0}}), 6);
    EXPECT_EQ(r.shift, 1);
    EXPECT_EQ(r.series.coeffs().size(), 1u);
    EXPECT_EQ(r.series.coeff(-1), Complex(1.0));
    EXPECT_LT(r.grid_residual, 1e-15);
}

TEST(Reciprocal, Errors) {
    EXPECT_THROW(reciprocal_trigpoly(TrigPoly{}, 4), singular_error);
    EXPECT_THROW(reciprocal_trigpoly(TrigPoly({{0, 0.0}}), 4), singular_error);
}

TEST(LambertRational, AllOnesIsGeometric) {
    const std::size_t n_max = 60;
    CoeffSeq chi(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) chi[n] = 1.0;
    const auto r = lambert_rational(chi, [](std::uint64_t n) { return n; }, n_max);
    for (std::size_t n = 1; n <= n_max; ++n) EXPECT_EQ(r.taylor[n], Complex(1.0));
    ASSERT_TRUE(r.period.has_value());
    EXPECT_EQ(*r.period, 1u);
    const Complex q = 0.5;
    EXPECT_LT(std::abs((*r.rational)(q) - q / (1.0 - q)), 1e-15);
}

TEST(LambertRational, DeltaCharacterReducesToMonomial) {
    CoeffSeq chi(40);
    chi[1] = 1.0;
    const auto r = lambert_rational(chi, [](std::uint64_t n) { return n; }, 40);
    for (std::size_t n = 1; n <= 40; ++n) EXPECT_EQ(r.lambert[n], Complex(mobius(n)));
    // A = delta_{n,1}: not periodic, the truncated series is theta(q) = q.
    EXPECT_FALSE(r.period.has_value());
    const Complex q = 0.3;
    Complex direct{}, qn{1.0};
    for (std::size_t n = 1; n <= 40; ++n) {
        qn *= q;
        direct += r.taylor[n] * qn;
    }
    EXPECT_LT(std::abs(direct - q), 1e-15);
}

TEST(LambertRational, PeriodicCharacterMatchesDirectSum) {
    // chi(n) = 1, f(n) = 3n: theta(q) = q^3 / (1 - q^3), A has period 3.
    const std::size_t n_max = 90;
    CoeffSeq chi(30);
    for (std::size_t n = 1; n <= 30; ++n) chi[n] = 1.0;
    const auto f = [](std::uint64_t n) { return 3 * n; };
    const auto r = lambert_rational(chi, f, n_max);
    ASSERT_TRUE(r.period.has_value());
    EXPECT_EQ(*r.period, 3u);
    for (double qr : {0.5, -0.5, 0.2}) {
        for (double qi : {0.0, 0.3}) {
            const Complex q{qr, qi};
            if (std::abs(q) > 0.5) continue;
            Complex direct{};
            for (std::size_t n = 1; n <= 400; ++n) direct += std::pow(q, static_cast<double>(f(n)));
            EXPECT_LT(std::abs((*r.rational)(q) - direct), 1e-12);
        }
    }
}

TEST(LambertRational, RejectsNonIncreasingMap) {
    CoeffSeq chi(4);
    EXPECT_THROW(lambert_rational(chi, [](std::uint64_t) { return 1; }, 10), std::invalid_argument);
}
