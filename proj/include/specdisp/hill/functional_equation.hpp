#pragma once

/**
 * @file functional_equation.hpp
 * @brief Fourier image of sum_k b_k y^(k) = V y with V a trigonometric polynomial:
 *   sum_n c_n yhat(z + n tau) = g(z) yhat(z),   g(z) = B(i z),  tau = 2 pi / T.
 */

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "specdisp/arith.hpp"
#include "specdisp/dispersion.hpp"
#include "specdisp/polynomial.hpp"
#include "specdisp/types.hpp"

namespace specdisp::hill {

using arith::TrigPoly;
using ComplexFn = std::function<Complex(Complex)>;

/// g_m(gamma) = C_m - E0 - (E0/2) l0^2 gamma^2 / sqrt(1 + l0^2 gamma^2)
struct MultiplierSpec {
    Complex Cm{};
    dispersion::ParticleParams params{};

    Complex operator()(Complex gamma) const {
        const double E0 = params.E0(), l0 = params.l0();
        const Complex x2 = l0 * l0 * gamma * gamma;
        return Cm - E0 - 0.5 * E0 * x2 / std::sqrt(1.0 + x2);
    }
};

/// Separation constants (Lambda_m, C_m) of yhat(gamma, t) = sum_m Lambda_m e^{-i C_m t / hbar} A_m(gamma).
struct SeparationConstant {
    Complex Lambda{1.0};
    Complex C{};
};

struct ResidualRecord {
    Complex z;
    Complex residual;
    double normalized = 0.0;
};

inline double normalized_residual(Complex residual, Complex scale) {
    return std::abs(residual) / std::max(std::abs(scale), 1e-300);
}

/// g(gamma) = B(i gamma) as a polynomial in gamma.
inline Polynomial multiplier_from_operator(const Polynomial& B) {
    std::vector<Complex> c(B.coeffs().size());
    Complex ik{1.0};
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = B.coeffs()[k] * ik;
        ik *= kI;
    }
    return Polynomial(std::move(c));
}

class FunctionalEquation {
public:
    FunctionalEquation(TrigPoly V, ComplexFn g, std::optional<Polynomial> gpoly = std::nullopt,
                       std::vector<SeparationConstant> separation = {})
        : V_(std::move(V)), g_(std::move(g)), gpoly_(std::move(gpoly)), sep_(std::move(separation)) {}

    const TrigPoly& potential() const noexcept { return V_; }
    double tau() const noexcept { return V_.shift(); }
    Complex g(Complex z) const { return g_(z); }
    const std::optional<Polynomial>& g_polynomial() const noexcept { return gpoly_; }
    const std::vector<SeparationConstant>& separation() const noexcept { return sep_; }

    /// sum_n c_n yhat(z + n tau) - g(z) yhat(z)
    Complex residual(const ComplexFn& yhat, Complex z) const {
        Complex s{};
        for (const auto& [n, c] : V_.coeffs()) s += c * yhat(z + static_cast<double>(n) * tau());
        return s - g_(z) * yhat(z);
    }

    /// Residual scaled by max(|g(z) yhat(z)|, 1e-300).
    ResidualRecord residual_record(const ComplexFn& yhat, Complex z) const {
        const Complex r = residual(yhat, z);
        return {z, r, normalized_residual(r, g_(z) * yhat(z))};
    }

    /// Coefficient-matching residual of y = e^{i nu x} sum_k a_k e^{-i k tau x}:
    ///   r_k = g(nu - k tau) a_k - sum_n c_n a_{k-n},  k = 0..a.size()-1.
    std::vector<Complex> lattice_residual(Complex nu, const std::vector<Complex>& a) const {
        std::vector<Complex> r(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            Complex s{};
            for (const auto& [n, c] : V_.coeffs()) {
                const long j = static_cast<long>(k) - n;
                if (j >= 0 && j < static_cast<long>(a.size())) s += c * a[static_cast<std::size_t>(j)];
            }
            r[k] = g_(nu - static_cast<double>(k) * tau()) * a[k] - s;
        }
        return r;
    }

private:
    TrigPoly V_;
    ComplexFn g_;
    std::optional<Polynomial> gpoly_;
    std::vector<SeparationConstant> sep_;
};

/// Equation sum_n c_n yhat(gamma + 2 pi n / T) = g(gamma) yhat(gamma) for polynomial g.
inline FunctionalEquation build_functional_equation(const Polynomial& gpoly, const TrigPoly& V,
                                                    std::vector<SeparationConstant> separation = {}) {
    return FunctionalEquation(V, [gpoly](Complex z) { return gpoly(z); }, gpoly, std::move(separation));
}

/// Same equation from the differential operator sum_k b_k d^k/dx^k.
inline FunctionalEquation functional_equation_from_operator(const Polynomial& B, const TrigPoly& V) {
    return build_functional_equation(multiplier_from_operator(B), V);
}

}  // namespace specdisp::hill
