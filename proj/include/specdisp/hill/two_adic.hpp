#pragma once

/**
 * @file two_adic.hpp
 * @brief Separated modes yhat(gamma, t) = sum_m Lambda_m e^{-i C_m t / hbar} A_m(gamma) with
 *        A_m assembled from the 2-adic inverse of {c_k - g_m(log2 gamma) [k = 0]}.
 */

#include <cmath>
#include <stdexcept>
#include <vector>

#include "specdisp/hill/functional_equation.hpp"

namespace specdisp::hill {

struct TwoAdicMode {
    /// b_1..b_nmax
    arith::CoeffSeq b;
    Complex g{};
    /// sum_n b_n e^{i n 2^gamma}
    Complex A{};
    /// Lambda e^{-i C t / hbar}
    Complex time_factor{};
    /// max_n |sum_{2^k | n} b_{n/2^k} s_k - [n = 1]|
    double identity_deviation = 0.0;

    Complex value() const { return A * time_factor; }
};

inline TwoAdicMode two_adic_mode_solution(const TrigPoly& c, const MultiplierSpec& gm, Complex Lambda, double gamma,
                                          std::size_t nmax, double t = 0.0) {
    if (!(gamma > 0.0)) throw std::domain_error("two_adic_mode_solution: gamma must be positive");
    if (!c.is_zero() && c.min_frequency() < 0)
        throw std::invalid_argument("two_adic_mode_solution: coefficients must have nonnegative indices");
    TwoAdicMode out;
    out.g = gm(std::log2(gamma));
    arith::TwoAdicSeq s(c.is_zero() ? 1 : static_cast<std::size_t>(c.max_frequency()) + 1);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = c.coeff(static_cast<int>(k));
    s[0] -= out.g;
    out.b = arith::two_adic_inverse(s, nmax);

    const auto check = arith::two_adic_convolve(s, out.b);
    for (std::size_t n = 1; n <= nmax; ++n)
        out.identity_deviation = std::max(out.identity_deviation, std::abs(check[n] - (n == 1 ? 1.0 : 0.0)));

    const double phase = std::exp2(gamma);
    for (std::size_t n = 1; n <= nmax; ++n)
        out.A += out.b[n] * std::exp(Complex(0.0, static_cast<double>(n) * phase));
    out.time_factor = Lambda * std::exp(-kI * gm.Cm * t / gm.params.hbar);
    return out;
}

/// sum over the separation constants of Lambda_m e^{-i C_m t / hbar} A_m(gamma).
inline Complex two_adic_superposition(const TrigPoly& c, const dispersion::ParticleParams& params,
                                      const std::vector<SeparationConstant>& modes, double gamma, std::size_t nmax,
                                      double t = 0.0) {
    Complex s{};
    for (const auto& m : modes) s += two_adic_mode_solution(c, MultiplierSpec{m.C, params}, m.Lambda, gamma, nmax, t).value();
    return s;
}

}  // namespace specdisp::hill
