#pragma once

/**
 * @file nested.hpp
 * @brief Depth-truncated nested sums for the functional equation: the direct
 *        expansion yhat = (1/B) sum c_n yhat(. + n) and the theta iteration built
 *        on A_n(x) = g(x + n tau) c*_n.
 */

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "specdisp/hill/functional_equation.hpp"
#include "specdisp/hill/lattice.hpp"

namespace specdisp::hill {

struct NestedReport {
    Complex value{};
    /// B(i gamma) yhat_D(gamma) - sum_n c_n yhat_{D-1}(gamma + n tau)
    Complex step_identity{};
    /// sum_n c_n yhat_D(gamma + n tau) - B(i gamma) yhat_D(gamma)
    Complex residual{};
    double normalized_residual = 0.0;
};

namespace detail {

class NestedTree {
public:
    NestedTree(const TrigPoly& V, const Polynomial& B, Complex gamma) : V_(V), B_(B), gamma_(gamma), tau_(V.shift()) {}

    Complex B_at(long offset) const {
        const Complex z = kI * (gamma_ + static_cast<double>(offset) * tau_);
        const Complex b = B_(z);
        if (std::abs(b) <= 1e-14 * lattice_scale(B_, z, 0.0)) throw pole_error("nested_sum_eval: B vanishes on the tree");
        return b;
    }

    Complex value(std::size_t depth, long offset) {
        const auto key = std::make_pair(depth, offset);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const Complex v = depth == 0 ? 1.0 / B_at(offset) : inner(depth, offset) / B_at(offset);
        memo_.emplace(key, v);
        return v;
    }

    /// sum_n c_n yhat_{depth-1}(gamma + (offset + n) tau)
    Complex inner(std::size_t depth, long offset) {
        Complex s{};
        for (const auto& [n, c] : V_.coeffs()) s += c * value(depth - 1, offset + n);
        return s;
    }

private:
    const TrigPoly& V_;
    const Polynomial& B_;
    Complex gamma_;
    double tau_;
    std::map<std::pair<std::size_t, long>, Complex> memo_;
};

}  // namespace detail

/// yhat_0 = 1/B(i gamma), yhat_D(gamma) = (1/B(i gamma)) sum_n c_n yhat_{D-1}(gamma + n tau), n over the support of V.
inline NestedReport nested_sum_eval(const TrigPoly& V, const Polynomial& B, Complex gamma, std::size_t depth) {
    detail::NestedTree tree(V, B, gamma);
    NestedReport r;
    r.value = tree.value(depth, 0);
    const Complex b0 = tree.B_at(0);
    r.step_identity = depth == 0 ? b0 * r.value - 1.0 : b0 * r.value - tree.inner(depth, 0);
    Complex s{};
    for (const auto& [n, c] : V.coeffs()) s += c * tree.value(depth, n);
    r.residual = s - b0 * r.value;
    r.normalized_residual = normalized_residual(r.residual, b0 * r.value);
    return r;
}

enum class AnMethod { Closed, Quadrature };

inline constexpr std::size_t kAnQuadraturePoints = 2048;

/// c*_n of 1/V, zero outside the triangular support n >= -n0.
inline Complex reciprocal_coefficient(const TrigPoly& V, int n) {
    const int n0 = V.min_frequency();
    if (n + n0 < 0) return {};
    return arith::reciprocal_trigpoly(V, static_cast<unsigned>(n + n0)).series.coeff(n);
}

namespace detail {

/// (1/T) int_0^T [sum_m g_m (x - i d/dt)^m W](t) e^{-i n tau t} dt with W = 1/Vbar.
inline Complex A_n_quadrature(const TrigPoly& V, const Polynomial& g, int n, Complex x) {
    const std::size_t M = kAnQuadraturePoints;
    const std::size_t deg = g.is_zero() ? 0 : static_cast<std::size_t>(g.degree());
    double cmax = 0.0;
    for (const auto& [k, c] : V.coeffs()) cmax = std::max(cmax, std::abs(c));

    // binomials C(j, i) for j <= deg
    std::vector<std::vector<double>> binom(deg + 1);
    for (std::size_t j = 0; j <= deg; ++j) {
        binom[j].assign(j + 1, 1.0);
        for (std::size_t i = 1; i < j; ++i) binom[j][i] = binom[j - 1][i - 1] + binom[j - 1][i];
    }

    const double T = V.period(), tau = V.shift();
    Complex acc{};
    std::vector<Complex> vb(deg + 1), w(deg + 1);
    for (std::size_t q = 0; q < M; ++q) {
        const double t = T * static_cast<double>(q) / static_cast<double>(M);
        for (std::size_t j = 0; j <= deg; ++j) vb[j] = V.evaluate_reflected(t, static_cast<unsigned>(j));
        if (std::abs(vb[0]) <= 1e-12 * cmax) throw singular_error("A_n_coefficients: Vbar vanishes on the period");
        w[0] = 1.0 / vb[0];
        for (std::size_t j = 1; j <= deg; ++j) {
            Complex s{};
            for (std::size_t i = 1; i <= j; ++i) s += binom[j][i] * vb[i] * w[j - i];
            w[j] = -s / vb[0];
        }
        Complex integrand{};
        for (std::size_t m = 0; m < g.coeffs().size(); ++m) {
            if (g.coeffs()[m] == Complex{}) continue;
            Complex term{}, mij{1.0};
            for (std::size_t j = 0; j <= m; ++j) {
                term += binom[m][j] * std::pow(x, static_cast<double>(m - j)) * mij * w[j];
                mij *= -kI;
            }
            integrand += g.coeffs()[m] * term;
        }
        acc += integrand * std::exp(Complex(0.0, -static_cast<double>(n) * tau * t));
    }
    return acc / static_cast<double>(M);
}

}  // namespace detail

/// A_n(x) = g(x + n tau) c*_n, or the same coefficient by quadrature over one period.
inline Complex A_n_coefficients(const TrigPoly& V, const Polynomial& g, int n, Complex x, AnMethod method = AnMethod::Closed) {
    if (V.is_zero()) throw singular_error("A_n_coefficients: V is zero");
    if (method == AnMethod::Quadrature) return detail::A_n_quadrature(V, g, n, x);
    return g(x + static_cast<double>(n) * V.shift()) * reciprocal_coefficient(V, n);
}

inline Complex A_n_coefficients(const TrigPoly& V, const MultiplierSpec& g, int n, Complex x, AnMethod method = AnMethod::Closed) {
    if (method == AnMethod::Quadrature)
        throw std::invalid_argument("A_n_coefficients: quadrature needs a polynomial multiplier");
    return g(x + static_cast<double>(n) * V.shift()) * reciprocal_coefficient(V, n);
}

struct ThetaReport {
    Complex value{};
    /// theta_D(w) - sum_n A_n(w) theta_D(w + n tau)
    Complex eq0_residual{};
    double normalized_residual = 0.0;
    int window_lo = 0, window_hi = 0;
};

/// theta(z) - sum_n c*_n g(z + n tau) theta(z + n tau) over the window of a reciprocal of the given order.
inline Complex eq0_residual(const TrigPoly& V, const ComplexFn& g, const ComplexFn& theta, Complex z, unsigned order = 32) {
    const auto rec = arith::reciprocal_trigpoly(V, order);
    const double tau = V.shift();
    Complex s{};
    for (const auto& [n, cs] : rec.series.coeffs()) {
        const Complex zn = z + static_cast<double>(n) * tau;
        s += cs * g(zn) * theta(zn);
    }
    return theta(z) - s;
}

/**
 * theta_D(w) = sum_{n1} A_{n1}(w) sum_{n2} A_{n2}(w + n1 tau) ... with theta_0 = 1,
 * n ranging over the c* window of a reciprocal of the given order.
 */
inline ThetaReport theta_iteration(const TrigPoly& V, const ComplexFn& g, Complex w, std::size_t depth, unsigned order = 32) {
    const auto rec = arith::reciprocal_trigpoly(V, order);
    const double tau = V.shift();
    std::map<std::pair<std::size_t, long>, Complex> memo;
    auto A = [&](int n, long offset) {
        return g(w + static_cast<double>(offset + n) * tau) * rec.series.coeff(n);
    };
    auto theta = [&](auto&& self, std::size_t d, long offset) -> Complex {
        if (d == 0) return 1.0;
        const auto key = std::make_pair(d, offset);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Complex s{};
        for (const auto& [n, cs] : rec.series.coeffs()) s += A(n, offset) * self(self, d - 1, offset + n);
        if (!std::isfinite(std::abs(s))) throw numerical_error("theta_iteration: overflow");
        memo.emplace(key, s);
        return s;
    };
    ThetaReport r;
    r.value = theta(theta, depth, 0);
    Complex s{};
    for (const auto& [n, cs] : rec.series.coeffs()) s += A(n, 0) * theta(theta, depth, n);
    r.eq0_residual = r.value - s;
    r.normalized_residual = normalized_residual(r.eq0_residual, r.value);
    r.window_lo = rec.series.min_frequency();
    r.window_hi = rec.series.max_frequency();
    return r;
}

inline ThetaReport theta_iteration(const TrigPoly& V, const Polynomial& g, Complex w, std::size_t depth, unsigned order = 32) {
    return theta_iteration(V, ComplexFn([g](Complex z) { return g(z); }), w, depth, order);
}

}  // namespace specdisp::hill
