#pragma once

/**
 * @file lattice.hpp
 * @brief Solutions y(x) = e^{i nu x} sum_k a_k e^{-i k tau x} of sum_m b_m y^(m) = V y
 *        for V supported on nonnegative frequencies, by coefficient matching and by
 *        iterating u -> (1/V) u''.
 */

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "specdisp/hill/functional_equation.hpp"

namespace specdisp::hill {

struct LatticeSolution {
    Complex nu{};
    std::vector<Complex> a{1.0};
    double tau = 1.0;

    std::size_t order() const noexcept { return a.empty() ? 0 : a.size() - 1; }

    /// Frequency of the k-th term.
    Complex frequency(std::size_t k) const { return nu - static_cast<double>(k) * tau; }

    /// d^order/dx^order y at x.
    Complex evaluate(Complex x, unsigned order = 0) const {
        Complex s{};
        for (std::size_t k = 0; k < a.size(); ++k) {
            const Complex w = kI * frequency(k);
            Complex wk{1.0};
            for (unsigned j = 0; j < order; ++j) wk *= w;
            s += a[k] * wk * std::exp(w * x);
        }
        return s;
    }
    Complex operator()(Complex x) const { return evaluate(x); }
};

/// Selects the indicial root nearest to `near`.
struct RootSelector {
    Complex near{};
};

namespace detail {

inline double lattice_scale(const Polynomial& B, Complex z, Complex c0) {
    double s = std::abs(c0);
    Complex zk{1.0};
    for (const Complex& b : B.coeffs()) {
        s += std::abs(b * zk);
        zk *= z;
    }
    return std::max(s, 1.0);
}

}  // namespace detail

/// Roots nu of B(i nu) = c0.
inline std::vector<Complex> indicial_roots(const Polynomial& B, Complex c0) {
    Polynomial P = multiplier_from_operator(B) - Polynomial{c0};
    if (P.degree() < 1) throw std::domain_error("indicial equation B(i nu) = c0 has no root");
    return roots(P);
}

/**
 * a_0 = 1, a_k = sum_{n=1}^{k} c_n a_{k-n} / (B(i(nu - k tau)) - c_0).
 * Throws resonance_error(k) when a denominator vanishes.
 */
inline LatticeSolution recurrence_solve(const TrigPoly& V, const Polynomial& B, RootSelector branch, std::size_t K) {
    if (V.is_zero() || V.min_frequency() < 0)
        throw std::invalid_argument("recurrence_solve: V must be supported on nonnegative frequencies");
    const Complex c0 = V.coeff(0);
    const auto nus = indicial_roots(B, c0);
    Complex nu = nus.front();
    for (const Complex& r : nus)
        if (std::abs(r - branch.near) < std::abs(nu - branch.near)) nu = r;

    LatticeSolution sol{nu, std::vector<Complex>(K + 1), V.shift()};
    sol.a[0] = 1.0;
    for (std::size_t k = 1; k <= K; ++k) {
        const Complex z = kI * sol.frequency(k);
        const Complex den = B(z) - c0;
        if (std::abs(den) <= 1e-12 * detail::lattice_scale(B, z, c0)) throw resonance_error(k);
        Complex s{};
        for (const auto& [n, c] : V.coeffs())
            if (n >= 1 && static_cast<std::size_t>(n) <= k) s += c * sol.a[k - static_cast<std::size_t>(n)];
        sol.a[k] = s / den;
    }
    return sol;
}

/// sum_m b_m y^(m)(x) - V(x) y(x) with the derivatives taken term by term.
inline Complex lattice_ode_residual(const LatticeSolution& sol, const TrigPoly& V, const Polynomial& B, Complex x) {
    Complex s{};
    for (std::size_t m = 0; m < B.coeffs().size(); ++m)
        if (B.coeffs()[m] != Complex{}) s += B.coeffs()[m] * sol.evaluate(x, static_cast<unsigned>(m));
    return s - V(x) * sol.evaluate(x);
}

struct OdeResidualStats {
    double max_abs = 0.0;
    /// max_abs / max |y| on the samples
    double normalized = 0.0;
    std::size_t samples = 0;
};

inline OdeResidualStats lattice_ode_residual_max(const LatticeSolution& sol, const TrigPoly& V, const Polynomial& B,
                                                 double x0, double x1, std::size_t samples = 257) {
    if (samples < 2) throw std::invalid_argument("lattice_ode_residual_max: need at least 2 samples");
    OdeResidualStats st{0.0, 0.0, samples};
    double ymax = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(samples - 1);
        st.max_abs = std::max(st.max_abs, std::abs(lattice_ode_residual(sol, V, B, x)));
        ymax = std::max(ymax, std::abs(sol.evaluate(x)));
    }
    st.normalized = st.max_abs / std::max(ymax, 1e-300);
    return st;
}

struct IterationReport {
    LatticeSolution solution;
    std::size_t iterations = 0;
    bool converged = false;
    /// max_k |lattice residual of u'' = V u| after each sweep
    std::vector<double> residual_history;
};

/**
 * Iteration of u = (1/V) u'' on the coefficient lattice, u'' acting as
 * a_k -> -(nu - k tau)^2 a_k and 1/V as convolution with c*. With
 * V = e^{-i n0 x} W the equation at index k is solved for its highest-index
 * unknown a_{k+n0}, which turns each sweep into a lower-triangular update
 * whose fixed points are those of the literal map. a_0 stays 1.
 */
inline IterationReport iterated_operator_solve(const TrigPoly& V, Complex nu, std::size_t iters, LatticeSolution seed,
                                               double tol = 1e-15) {
    if (seed.a.empty()) throw std::invalid_argument("iterated_operator_solve: empty seed");
    const std::size_t K = seed.order();
    const auto rec = arith::reciprocal_trigpoly(V, static_cast<unsigned>(K + 1));
    const int n0 = rec.shift;
    if (n0 < 0) throw std::invalid_argument("iterated_operator_solve: V must be supported on nonnegative frequencies");
    const double tau = V.shift();
    auto D = [&](long m) {
        const Complex w = nu - static_cast<double>(m) * tau;
        return -w * w;
    };
    auto coef = [&](long k) -> Complex { return k >= 0 && k <= static_cast<long>(K) ? seed.a[static_cast<std::size_t>(k)] : Complex{}; };

    const auto fe = build_functional_equation(Polynomial{0.0, 0.0, -1.0}, V);
    auto lattice_max = [&](const std::vector<Complex>& a) {
        double r = 0.0;
        for (const Complex& v : fe.lattice_residual(nu, a)) r = std::max(r, std::abs(v));
        return r;
    };

    IterationReport rep{seed, 0, false, {}};
    rep.solution.nu = nu;
    rep.solution.tau = tau;
    rep.solution.a[0] = 1.0;
    const Complex lead = rec.series.coeff(-n0);
    for (std::size_t it = 0; it < iters; ++it) {
        std::vector<Complex> next(K + 1);
        next[0] = 1.0;
        double change = 0.0;
        for (std::size_t m = 1; m <= K; ++m) {
            const long k = static_cast<long>(m) - n0;
            Complex rhs = n0 == 0 ? Complex{} : coef(k);
            for (const auto& [j, cs] : rec.series.coeffs()) {
                if (j == -n0) continue;
                const long idx = k - j;
                if (idx >= 0 && idx <= static_cast<long>(K)) rhs -= cs * D(idx) * coef(idx);
            }
            const Complex diag = lead * D(static_cast<long>(m)) - (n0 == 0 ? 1.0 : 0.0);
            if (std::abs(diag) == 0.0) throw resonance_error(m);
            next[m] = rhs / diag;
            change = std::max(change, std::abs(next[m] - seed.a[m]));
        }
        seed.a = std::move(next);
        rep.solution.a = seed.a;
        rep.iterations = it + 1;
        rep.residual_history.push_back(lattice_max(seed.a));
        if (change <= tol * std::max(1.0, std::abs(seed.a[0]))) {
            rep.converged = true;
            break;
        }
    }
    return rep;
}

}  // namespace specdisp::hill
