#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials over a field, ascending coefficients.
 *
 * The scalar is a template parameter so the same code serves floating
 * complex evaluation and exact rational arithmetic
 * (boost::multiprecision::cpp_rational).
 */

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "specdisp/types.hpp"

namespace specdisp {

template <class Scalar>
class BasicPolynomial {
public:
    using scalar_type = Scalar;

    BasicPolynomial() = default;
    BasicPolynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }
    explicit BasicPolynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static BasicPolynomial monomial(std::size_t degree, Scalar coeff = Scalar(1)) {
        std::vector<Scalar> c(degree + 1, Scalar(0));
        c[degree] = coeff;
        return BasicPolynomial(std::move(c));
    }

    /// Degree; -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Scalar>& coeffs() const noexcept { return c_; }
    Scalar coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(0); }

    template <class Arg>
    auto operator()(const Arg& z) const {
        using R = std::conditional_t<std::is_convertible_v<Arg, Scalar>, Scalar, Arg>;
        const R x(z);
        R acc = R(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = R(acc * x + R(*it));
        return acc;
    }

    BasicPolynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Scalar> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Scalar(static_cast<int>(k));
        return BasicPolynomial(std::move(d));
    }

    /// q(z) = p(z + a)
    BasicPolynomial shifted(const Scalar& a) const {
        BasicPolynomial acc;
        const BasicPolynomial lin{a, Scalar(1)};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + BasicPolynomial{*it};
        return acc;
    }

    friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
        std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()), Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
        return BasicPolynomial(std::move(out));
    }
    friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) { return a + b * Scalar(-1); }
    friend BasicPolynomial operator*(const BasicPolynomial& a, const Scalar& s) {
        std::vector<Scalar> out(a.c_);
        for (auto& x : out) x *= s;
        return BasicPolynomial(std::move(out));
    }
    friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return BasicPolynomial(std::move(out));
    }

    bool operator==(const BasicPolynomial&) const = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
    }

    std::vector<Scalar> c_;
};

using Polynomial = BasicPolynomial<Complex>;

/// Maps coefficients through a conversion, e.g. rational -> complex.
template <class To, class From, class Fn>
BasicPolynomial<To> convert(const BasicPolynomial<From>& p, Fn fn) {
    std::vector<To> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(fn(c));
    return BasicPolynomial<To>(std::move(out));
}

/// All complex roots: companion-matrix eigenvalues, then Newton polish.
inline std::vector<Complex> roots(const Polynomial& p) {
    const int n = p.degree();
    if (n < 1) return {};
    const auto& c = p.coeffs();
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    const Polynomial dp = p.derivative();
    for (Complex& r : out) {
        for (int it = 0; it < 4; ++it) {
            const Complex d = dp(r);
            if (d == Complex{}) break;
            const Complex step = p(r) / d;
            if (!std::isfinite(std::abs(step))) break;
            r -= step;
        }
    }
    return out;
}

}  // namespace specdisp
