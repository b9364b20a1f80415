#pragma once

/**
 * @file gamma_forms.hpp
 * @brief First-order difference equations yhat(z + tau) = H(z) yhat(z): Gamma-product
 *        closed forms, truncated infinite products and the series g(z) = sum c_k prod H(z+j).
 */

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "specdisp/hill/functional_equation.hpp"
#include "specdisp/specfun.hpp"

namespace specdisp::hill {

/**
 * sum_{k=0}^{kmax} c_k prod_{j<k} H(z + j). When a partial product leaves the
 * double range the sum is redone with logarithms scaled by the largest term.
 */
inline Complex g_from_H(const std::vector<Complex>& c, const ComplexFn& H, Complex z, std::size_t kmax) {
    const std::size_t n = std::min(kmax + 1, c.size());
    Complex s{}, prod{1.0};
    bool finite = true;
    for (std::size_t k = 0; k < n; ++k) {
        s += c[k] * prod;
        prod *= H(z + static_cast<double>(k));
        if (!std::isfinite(std::abs(prod)) || (prod == Complex{} && k + 1 < n)) {
            finite = false;
            break;
        }
    }
    if (finite && std::isfinite(std::abs(s))) return s;

    std::vector<Complex> logs;
    logs.reserve(n);
    Complex lp{};
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        if (c[k] != Complex{}) {
            logs.push_back(std::log(c[k]) + lp);
            top = std::max(top, logs.back().real());
        } else {
            logs.push_back({-std::numeric_limits<double>::infinity(), 0.0});
        }
        const Complex h = H(z + static_cast<double>(k));
        if (h == Complex{}) {
            logs.resize(k + 1);
            break;
        }
        lp += std::log(h);
    }
    Complex scaled{};
    for (const Complex& l : logs)
        if (std::isfinite(l.real())) scaled += std::exp(l - top);
    return scaled * std::exp(top);
}

/// H(z) = (A/B) C z^m e^{-R(z)} prod (z - rho_j) / prod (z - sigma_j).
struct GammaHSpec {
    Complex C{1.0};
    int m = 0;
    Polynomial R{};
    std::vector<Complex> roots{};
    std::vector<Complex> poles{};
    Complex A{1.0};
    Complex B{1.0};
};

/// yhat(z) = base^z Gamma(z)^m e^{-R1(z)} prod Gamma(z - rho_j) / prod Gamma(z - sigma_j).
class GammaProductForm {
public:
    GammaProductForm(Complex base, int m, Polynomial R, Polynomial R1, std::vector<Complex> roots,
                     std::vector<Complex> poles)
        : base_(base), m_(m), R_(std::move(R)), R1_(std::move(R1)), roots_(std::move(roots)), poles_(std::move(poles)) {}

    Complex base() const noexcept { return base_; }
    int gamma_power() const noexcept { return m_; }
    const Polynomial& R() const noexcept { return R_; }
    const Polynomial& R1() const noexcept { return R1_; }
    const std::vector<Complex>& roots() const noexcept { return roots_; }
    const std::vector<Complex>& poles() const noexcept { return poles_; }

    Complex operator()(Complex z) const {
        Complex v = std::exp(z * std::log(base_) - R1_(z));
        const Complex gz = m_ != 0 ? specfun::complex_gamma(z) : Complex{1.0};
        for (int i = 0; i < std::abs(m_); ++i) v = m_ > 0 ? v * gz : v / gz;
        for (const Complex& r : roots_) v *= specfun::complex_gamma(z - r);
        for (const Complex& s : poles_) v /= specfun::complex_gamma(z - s);
        return v;
    }

    Complex H(Complex z) const {
        Complex h = base_ * std::exp(-R_(z));
        for (int i = 0; i < std::abs(m_); ++i) h = m_ > 0 ? h * z : h / z;
        for (const Complex& r : roots_) h *= z - r;
        for (const Complex& s : poles_) h /= z - s;
        return h;
    }

    /// |yhat(z+1) - H(z) yhat(z)| / |H(z) yhat(z)|
    double identity_residual(Complex z) const {
        const Complex rhs = H(z) * (*this)(z);
        return normalized_residual((*this)(z + 1.0) - rhs, rhs);
    }

private:
    Complex base_;
    int m_;
    Polynomial R_, R1_;
    std::vector<Complex> roots_, poles_;
};

inline GammaProductForm gamma_closed_form(const GammaHSpec& h) {
    if (h.B == Complex{} || h.A == Complex{} || h.C == Complex{})
        throw std::invalid_argument("gamma_closed_form: A, B and C must be nonzero");
    for (const Complex& r : h.roots)
        for (const Complex& s : h.poles)
            if (std::abs(r - s) <= 1e-14 * std::max(1.0, std::abs(r)))
                throw std::invalid_argument("gamma_closed_form: common root and pole");
    if (h.m != 0) {
        for (const Complex& r : h.roots)
            if (h.m < 0 && std::abs(r) <= 1e-14) throw std::invalid_argument("gamma_closed_form: common root and pole at 0");
        for (const Complex& s : h.poles)
            if (h.m > 0 && std::abs(s) <= 1e-14) throw std::invalid_argument("gamma_closed_form: common root and pole at 0");
    }
    return GammaProductForm(h.A / h.B * h.C, h.m, h.R, specfun::faulhaber_R1(h.R), h.roots, h.poles);
}

/// H = P/Q with leading coefficients as A, B and all zeros (including z = 0) as roots and poles.
inline GammaHSpec gamma_spec_from_rational(const Polynomial& P, const Polynomial& Q = Polynomial{1.0}) {
    if (P.is_zero() || Q.is_zero()) throw std::invalid_argument("gamma_spec_from_rational: zero polynomial");
    GammaHSpec h;
    h.A = P.coeffs().back();
    h.B = Q.coeffs().back();
    h.roots = roots(P);
    h.poles = roots(Q);
    return h;
}

/**
 * sum_k c_k r^k [prod_i (z+A_i)_k / prod_i (z+B_i)_k] e^{-akz - ak(k-1)/2},
 * i.e. g_from_H for H(z) = r prod (z+A_i) / prod (z+B_i) e^{-az}. With
 * `factorial_variant` the exponent uses k(k+1)/2 and each term is divided by k!.
 */
inline Complex pochhammer_g(const std::vector<Complex>& c, const std::vector<Complex>& A_list,
                            const std::vector<Complex>& B_list, Complex a, Complex ratio, Complex z, std::size_t kmax,
                            bool factorial_variant = false) {
    Complex s{};
    const std::size_t n = std::min(kmax + 1, c.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (c[k] == Complex{}) continue;
        const auto ku = static_cast<unsigned>(k);
        const double kd = static_cast<double>(k);
        Complex t = c[k] * std::pow(ratio, kd);
        for (const Complex& Ai : A_list) t *= specfun::pochhammer(z + Ai, ku);
        for (const Complex& Bi : B_list) {
            const Complex p = specfun::pochhammer(z + Bi, ku);
            if (p == Complex{}) throw pole_error("pochhammer_g: vanishing denominator");
            t /= p;
        }
        const double tri = factorial_variant ? kd * (kd + 1.0) / 2.0 : kd * (kd - 1.0) / 2.0;
        t *= std::exp(-a * kd * z - a * tri);
        if (factorial_variant) t /= std::tgamma(kd + 1.0);
        s += t;
    }
    return s;
}

struct ProductReport {
    Complex value{};
    /// yhat_N(z + tau) / yhat_N(z)
    Complex ratio{};
    /// |ratio H(z+N tau) - H(z)| / |H(z)|, the telescoping defect
    double telescoping_defect = 0.0;
    /// |ratio - H(z)| / |H(z)| = |H(z)/H(z+N tau) - 1|
    double functional_residual = 0.0;
    bool convergent = false;
    /// estimate of sum_{n>=N} |H(z+n tau) - 1| when convergent, +inf otherwise
    double tail_estimate = std::numeric_limits<double>::infinity();
};

/// yhat_N(z) = prod_{n<N} 1/H(z + n tau).
inline ProductReport product_solution(const ComplexFn& H, double tau, Complex z, std::size_t N) {
    if (N == 0) throw std::invalid_argument("product_solution: N must be positive");
    auto partial = [&](Complex w) {
        Complex p{1.0};
        for (std::size_t n = 0; n < N; ++n) {
            const Complex h = H(w + static_cast<double>(n) * tau);
            if (h == Complex{}) throw singular_error("product_solution: H vanishes on the ray");
            p /= h;
        }
        return p;
    };
    ProductReport r;
    r.value = partial(z);
    const Complex shifted = partial(z + tau);
    const Complex h0 = H(z), hN = H(z + static_cast<double>(N) * tau);
    if (hN == Complex{}) throw singular_error("product_solution: H vanishes on the ray");
    r.ratio = shifted / r.value;
    r.telescoping_defect = normalized_residual(r.ratio * hN - h0, h0);
    r.functional_residual = normalized_residual(r.ratio - h0, h0);

    // |H - 1| must decay geometrically or faster than 1/n along the ray
    auto d = [&](std::size_t n) { return std::abs(H(z + static_cast<double>(n) * tau) - 1.0); };
    const std::size_t n1 = std::max<std::size_t>(N, 8), n2 = 2 * n1;
    const double d1 = d(n1), d2 = d(n2);
    if (d2 == 0.0) {
        r.convergent = true;
        r.tail_estimate = 0.0;
    } else if (d1 > 0.0 && d2 < d1 && d1 < 1.0) {
        // local power-law exponent of the decay between n1 and 2 n1
        const double p = std::log(d1 / d2) / std::log(2.0);
        if (p > 4.0) {
            const double q = std::pow(d2 / d1, 1.0 / static_cast<double>(n2 - n1));
            r.convergent = true;
            r.tail_estimate = d(N) / (1.0 - q);
        } else if (p > 1.05) {
            r.convergent = true;
            r.tail_estimate = d(N) * static_cast<double>(N) / (p - 1.0);
        }
    }
    return r;
}

}  // namespace specdisp::hill
