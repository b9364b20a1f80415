#pragma once

/**
 * @file specfun.hpp
 * @brief Complex Gamma, Pochhammer symbols, Faulhaber antidifferences and a
 * numerical Mellin transform.
 */

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "specdisp/polynomial.hpp"
#include "specdisp/types.hpp"

namespace specdisp::specfun {

namespace detail {

// Lanczos approximation, g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeffs{
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

inline Complex gamma_right_half(Complex z) {
    z -= 1.0;
    Complex x = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) x += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    const Complex t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

/// sin(pi z) with the integer part of Re z removed first.
inline Complex sin_pi(Complex z) {
    const double n = std::round(z.real());
    const Complex r = std::sin(kPi * (z - n));
    return std::fmod(std::abs(n), 2.0) == 0.0 ? r : -r;
}

}  // namespace detail

/// Gamma on the complex plane; reflection for Re z < 1/2.
inline Complex complex_gamma(Complex z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
        throw pole_error("complex_gamma: pole at nonpositive integer");
    if (z.real() < 0.5) return kPi / (detail::sin_pi(z) * detail::gamma_right_half(1.0 - z));
    return detail::gamma_right_half(z);
}

/// Rising factorial (z)_k = z (z+1) ... (z+k-1).
inline Complex pochhammer(Complex z, unsigned k) {
    Complex p{1.0};
    for (unsigned j = 0; j < k; ++j) p *= z + static_cast<double>(j);
    return p;
}

/// Bernoulli numbers B_0..B_m with B_1 = -1/2.
template <class Scalar>
std::vector<Scalar> bernoulli_numbers(std::size_t m) {
    std::vector<Scalar> b(m + 1, Scalar(0));
    b[0] = Scalar(1);
    for (std::size_t n = 1; n <= m; ++n) {
        Scalar s(0);
        Scalar binom(1);  // C(n+1, k)
        for (std::size_t k = 0; k < n; ++k) {
            s += binom * b[k];
            binom = binom * Scalar(static_cast<int>(n + 1 - k)) / Scalar(static_cast<int>(k + 1));
        }
        b[n] = -s / Scalar(static_cast<int>(n + 1));
    }
    return b;
}

/// p_tau(n) = sum_{j=0}^{n-1} j^tau as a polynomial in n.
template <class Scalar>
BasicPolynomial<Scalar> power_sum_polynomial(std::size_t tau) {
    const auto b = bernoulli_numbers<Scalar>(tau);
    std::vector<Scalar> c(tau + 2, Scalar(0));
    Scalar binom(1);  // C(tau+1, k)
    for (std::size_t k = 0; k <= tau; ++k) {
        c[tau + 1 - k] = binom * b[k] / Scalar(static_cast<int>(tau + 1));
        binom = binom * Scalar(static_cast<int>(tau + 1 - k)) / Scalar(static_cast<int>(k + 1));
    }
    return BasicPolynomial<Scalar>(std::move(c));
}

/**
 * Antidifference R1 of R: R1(z+1) - R1(z) = R(z), R1(0) = 0.
 * Built linearly from the Faulhaber power sums; deg R1 = deg R + 1.
 */
template <class Scalar>
BasicPolynomial<Scalar> faulhaber_R1(const BasicPolynomial<Scalar>& r) {
    BasicPolynomial<Scalar> out;
    for (std::size_t tau = 0; tau < r.coeffs().size(); ++tau) {
        if (r.coeffs()[tau] == Scalar(0)) continue;
        out = out + power_sum_polynomial<Scalar>(tau) * r.coeffs()[tau];
    }
    return out;
}

struct MellinSample {
    Complex s;
    Complex value;
    double error;
};

/**
 * (Mg)(s) = int_0^inf t^{s-1} g(t) dt, requiring 0 < Re s < strip_upper.
 * [0,1] is integrated directly and [1,inf) after t -> 1/t, both by
 * tanh-sinh quadrature, which tolerates the algebraic endpoint behaviour.
 */
inline MellinSample mellin_numeric(const std::function<Complex(double)>& g, Complex s,
                                   double strip_upper = std::numeric_limits<double>::infinity(),
                                   double tolerance = 1e-12) {
    if (!(s.real() > 0.0) || !(s.real() < strip_upper))
        throw std::domain_error("mellin_numeric: Re s outside the convergence strip");

    boost::math::quadrature::tanh_sinh<double> integrator;
    // t^power g(t) assembled in log space so that tiny g times huge powers stays finite.
    auto kernel = [](double t, Complex power, Complex gv) -> Complex {
        if (gv == Complex{}) return {};
        return std::exp(power * std::log(t) + std::log(gv));
    };
    auto lower = [&](double t) { return kernel(t, s - 1.0, g(t)); };
    auto upper = [&](double u) { return kernel(u, -s - 1.0, g(1.0 / u)); };

    double total_error = 0.0;
    Complex total{};
    for (const auto& piece : {std::function<Complex(double)>(lower), std::function<Complex(double)>(upper)}) {
        for (int part = 0; part < 2; ++part) {
            auto f = [&](double t) { return part == 0 ? piece(t).real() : piece(t).imag(); };
            double err = 0.0, l1 = 0.0;
            double v = 0.0;
            try {
                v = integrator.integrate(f, 0.0, 1.0, tolerance, &err, &l1);
            } catch (const std::exception& e) {
                throw numerical_error(std::string("mellin_numeric: quadrature failed: ") + e.what());
            }
            if (!std::isfinite(v) || !std::isfinite(err))
                throw numerical_error("mellin_numeric: divergent integral");
            total += part == 0 ? Complex{v, 0.0} : Complex{0.0, v};
            total_error += err;
        }
    }
    if (total_error > 1e-6 * std::max(1.0, std::abs(total)))
        throw numerical_error("mellin_numeric: quadrature did not converge (divergent integral?)");
    return {s, total, total_error};
}

/// Fourier image implied by y(i x) = (Mg)(x):  yhat(gamma) = 2 pi g(e^{-gamma}).
inline Complex mellin_bridge(const std::function<Complex(double)>& g, double gamma) {
    return 2.0 * kPi * g(std::exp(-gamma));
}

}  // namespace specdisp::specfun
