#pragma once

/**
 * @file arith.hpp
 * @brief Number-theoretic and coefficient-algebra kernel.
 *
 * - Möbius function from a linear sieve
 * - Taylor <-> Lambert coefficient conversion (divisor sums / Möbius inversion)
 * - 2-adic arithmetic inverse: a with sum_{2^k | n} b_k a_{n/2^k} = [n == 1]
 * - truncated reciprocal of a trigonometric polynomial
 * - Lambert-to-rational reduction of sum chi(n) q^{f(n)}
 *
 * Sequences indexed from 1 (CoeffSeq) are stored densely up to their length
 * bound; all operations are pure.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "specdisp/types.hpp"

namespace specdisp::arith {

inline constexpr std::uint64_t kDefaultMobiusBound = 1'000'000;

/// Möbius values on [1, bound] from a linear sieve.
class MobiusSieve {
public:
    explicit MobiusSieve(std::uint64_t bound = kDefaultMobiusBound) : mu_(bound + 1, 0) {
        std::vector<std::uint64_t> primes;
        std::vector<bool> composite(bound + 1, false);
        if (bound >= 1) mu_[1] = 1;
        for (std::uint64_t i = 2; i <= bound; ++i) {
            if (!composite[i]) {
                primes.push_back(i);
                mu_[i] = -1;
            }
            for (std::uint64_t p : primes) {
                const std::uint64_t ip = i * p;
                if (ip > bound) break;
                composite[ip] = true;
                if (i % p == 0) {
                    mu_[ip] = 0;
                    break;
                }
                mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
            }
        }
    }

    std::uint64_t bound() const noexcept { return mu_.size() - 1; }

    int operator()(std::uint64_t n) const {
        if (n == 0) throw std::invalid_argument("mobius: n must be >= 1");
        if (n > bound()) throw std::out_of_range("mobius: n exceeds sieve bound");
        return mu_[n];
    }

private:
    std::vector<std::int8_t> mu_;
};

inline const MobiusSieve& default_sieve() {
    static const MobiusSieve sieve{};
    return sieve;
}

/// Möbius function; n in [1, 10^6].
inline int mobius(std::uint64_t n) { return default_sieve()(n); }

/// Coefficients a_1..a_N of a sequence indexed from 1.
class CoeffSeq {
public:
    CoeffSeq() = default;
    explicit CoeffSeq(std::size_t length) : v_(length) {}
    explicit CoeffSeq(std::vector<Complex> values) : v_(std::move(values)) {}

    std::size_t size() const noexcept { return v_.size(); }

    /// 1-based access.
    Complex& operator[](std::size_t n) { return v_.at(n - 1); }
    const Complex& operator[](std::size_t n) const { return v_.at(n - 1); }

    /// Zero outside [1, size()].
    Complex get(std::size_t n) const { return (n >= 1 && n <= v_.size()) ? v_[n - 1] : Complex{}; }

    std::span<const Complex> values() const noexcept { return v_; }

    bool operator==(const CoeffSeq&) const = default;

private:
    std::vector<Complex> v_;
};

enum class LambertDirection { TaylorToLambert, LambertToTaylor };

/**
 * Taylor coefficients A_n of f(x) = sum A_n e^{-nx} and Lambert coefficients
 * B(n) of f(x) = sum B(n) / (e^{nx} - 1) are related by
 *   B(n) = sum_{d|n} A_d mu(n/d),   A(n) = sum_{d|n} B(d).
 */
inline CoeffSeq lambert_convert(const CoeffSeq& seq, LambertDirection direction) {
    const std::size_t n_max = seq.size();
    CoeffSeq out(n_max);
    for (std::size_t d = 1; d <= n_max; ++d) {
        const Complex ad = seq[d];
        if (ad == Complex{}) continue;
        for (std::size_t n = d, q = 1; n <= n_max; n += d, ++q) {
            if (direction == LambertDirection::LambertToTaylor) {
                out[n] += ad;
            } else if (const int mu = mobius(q); mu != 0) {
                out[n] += static_cast<double>(mu) * ad;
            }
        }
    }
    return out;
}

/// Per-divisor sequence d -> A_d (-d)^order, the Lambert data of f^(order).
inline CoeffSeq lambert_derivative(const CoeffSeq& seq, unsigned order) {
    CoeffSeq out(seq.size());
    for (std::size_t d = 1; d <= seq.size(); ++d) {
        out[d] = seq[d] * std::pow(-static_cast<double>(d), static_cast<double>(order));
    }
    return out;
}

/// sum_{n<=N} A_n e^{-nx}
inline Complex evaluate_taylor(const CoeffSeq& a, double x) {
    Complex s{};
    for (std::size_t n = 1; n <= a.size(); ++n) s += a[n] * std::exp(-static_cast<double>(n) * x);
    return s;
}

/// sum_{n<=N} B(n) / (e^{nx} - 1), x > 0.
inline Complex evaluate_lambert(const CoeffSeq& b, double x) {
    Complex s{};
    for (std::size_t n = 1; n <= b.size(); ++n) s += b[n] / std::expm1(static_cast<double>(n) * x);
    return s;
}

/// Sequence b_0, b_1, ... indexed by the 2-adic exponent k.
using TwoAdicSeq = std::vector<Complex>;

/// (b *_2 a)(n) = sum_{2^k | n} b_k a_{n / 2^k} for n in [1, N].
inline CoeffSeq two_adic_convolve(const TwoAdicSeq& b, const CoeffSeq& a) {
    CoeffSeq out(a.size());
    for (std::size_t n = 1; n <= a.size(); ++n) {
        Complex s{};
        std::size_t m = n;
        for (std::size_t k = 0; k < b.size(); ++k) {
            s += b[k] * a[m];
            if (m % 2 != 0) break;
            m /= 2;
        }
        out[n] = s;
    }
    return out;
}

/// Solves sum_{2^k | n} b_k a_{n/2^k} = [n == 1] for a_1..a_N by forward substitution.
inline CoeffSeq two_adic_inverse(const TwoAdicSeq& b, std::size_t n_max) {
    if (b.empty() || b[0] == Complex{}) throw singular_error("two_adic_inverse: b_0 must be nonzero");
    CoeffSeq a(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        Complex rhs = (n == 1) ? Complex{1.0} : Complex{};
        std::size_t m = n;
        for (std::size_t k = 1; k < b.size() && m % 2 == 0; ++k) {
            m /= 2;
            rhs -= b[k] * a[m];
        }
        a[n] = rhs / b[0];
    }
    return a;
}

/// Finite Fourier sum V(x) = sum_n c_n exp(-2 pi i n x / T).
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(std::map<int, Complex> coeffs, double period = 2.0 * kPi)
        : coeffs_(std::move(coeffs)), period_(period) {
        if (!(period_ > 0.0)) throw std::invalid_argument("TrigPoly: period must be positive");
        std::erase_if(coeffs_, [](const auto& kv) { return kv.second == Complex{}; });
    }

    static TrigPoly constant(Complex c) { return TrigPoly({{0, c}}); }

    const std::map<int, Complex>& coeffs() const noexcept { return coeffs_; }
    double period() const noexcept { return period_; }
    /// Lattice step 2 pi / T of the Fourier-side shift.
    double shift() const noexcept { return 2.0 * kPi / period_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    Complex coeff(int n) const {
        auto it = coeffs_.find(n);
        return it == coeffs_.end() ? Complex{} : it->second;
    }
    int min_frequency() const { return coeffs_.begin()->first; }
    int max_frequency() const { return coeffs_.rbegin()->first; }

    /// d^order/dx^order of V at complex x.
    Complex evaluate(Complex x, unsigned order = 0) const {
        Complex s{};
        for (const auto& [n, c] : coeffs_) {
            const Complex w = -kI * static_cast<double>(n) * shift();
            Complex wk{1.0};
            for (unsigned j = 0; j < order; ++j) wk *= w;
            s += c * wk * std::exp(w * x);
        }
        return s;
    }
    Complex operator()(Complex x) const { return evaluate(x); }

    /// Vbar(t) = sum c_n exp(+2 pi i n t / T).
    Complex evaluate_reflected(double t, unsigned order = 0) const { return evaluate(Complex{-t}, order) * (order % 2 ? -1.0 : 1.0); }

    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
        if (a.period_ != b.period_) throw std::invalid_argument("TrigPoly: period mismatch");
        std::map<int, Complex> out;
        for (const auto& [n, c] : a.coeffs_)
            for (const auto& [m, d] : b.coeffs_) out[n + m] += c * d;
        return TrigPoly(std::move(out), a.period_);
    }

    bool operator==(const TrigPoly&) const = default;

private:
    std::map<int, Complex> coeffs_;
    double period_ = 2.0 * kPi;
};

/// Truncated reciprocal 1/V together with the frequency shift factored out of V.
struct Reciprocal {
    TrigPoly series;       ///< c*_m, already shifted back by the factored frequency
    int shift = 0;         ///< n0 with V = exp(-i n0 x) W, W having nonzero constant term
    unsigned order = 0;    ///< K: coefficients of 1/W kept for 0..K
    double grid_residual;  ///< max |V V* - 1| on a 256-point grid over one period
};

/**
 * Reciprocal of a trigonometric polynomial by triangular convolution solve.
 * V is written as exp(-i n0 x) W with n0 the lowest frequency; the
 * coefficients w*_k of 1/W satisfy sum_j w_j w*_{k-j} = [k == 0] exactly
 * for k <= K and 1/V has c*_{k - n0} = w*_k.
 */
inline Reciprocal reciprocal_trigpoly(const TrigPoly& v, unsigned order) {
    if (v.is_zero()) throw singular_error("reciprocal_trigpoly: zero polynomial");
    const int n0 = v.min_frequency();
    const Complex w0 = v.coeff(n0);
    std::vector<Complex> wstar(order + 1);
    wstar[0] = 1.0 / w0;
    for (unsigned k = 1; k <= order; ++k) {
        Complex s{};
        for (unsigned j = 1; j <= k; ++j) {
            const Complex wj = v.coeff(n0 + static_cast<int>(j));
            if (wj != Complex{}) s += wj * wstar[k - j];
        }
        wstar[k] = -s / w0;
    }
    std::map<int, Complex> cstar;
    for (unsigned k = 0; k <= order; ++k) cstar[static_cast<int>(k) - n0] = wstar[k];
    TrigPoly series(std::move(cstar), v.period());

    constexpr int kGrid = 256;
    double residual = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        const double x = v.period() * i / kGrid;
        residual = std::max(residual, std::abs(v(x) * series(x) - 1.0));
    }
    return {std::move(series), n0, order, residual};
}

/// theta(q) = (sum_{n=1}^{T0} A(n) q^n) / (1 - q^{T0}).
struct RationalForm {
    std::size_t period;
    std::vector<Complex> numerator;  ///< A(1)..A(T0)

    Complex operator()(Complex q) const {
        Complex num{}, qn{1.0};
        for (const Complex& a : numerator) {
            qn *= q;
            num += a * qn;
        }
        return num / (1.0 - std::pow(q, static_cast<double>(period)));
    }
};

struct LambertRational {
    CoeffSeq lambert;  ///< B(n)
    CoeffSeq taylor;   ///< A(n)
    std::optional<std::size_t> period;
    std::optional<RationalForm> rational;
};

inline constexpr double kPeriodTolerance = 1e-12;

/// Smallest T0 <= N/2 with |A(n + T0) - A(n)| <= tol over the sampled range.
inline std::optional<std::size_t> detect_period(const CoeffSeq& a, double tol = kPeriodTolerance) {
    const std::size_t n_max = a.size();
    for (std::size_t t0 = 1; 2 * t0 <= n_max; ++t0) {
        bool periodic = true;
        for (std::size_t n = 1; n + t0 <= n_max && periodic; ++n) periodic = std::abs(a[n + t0] - a[n]) <= tol;
        if (periodic) return t0;
    }
    return std::nullopt;
}

/**
 * Lambert form of theta(q) = sum chi(n) q^{f(n)} with f strictly increasing:
 *   B(n) = sum_{f(d) | n} chi(d) mu(n / f(d)),  A(n) = sum_{d|n} B(d).
 * When A is periodic on [1, nmax] the closed rational form is returned.
 */
inline LambertRational lambert_rational(const CoeffSeq& chi, const std::function<std::uint64_t(std::uint64_t)>& f,
                                        std::size_t n_max) {
    CoeffSeq b(n_max);
    std::uint64_t prev = 0;
    for (std::size_t d = 1; d <= chi.size(); ++d) {
        const std::uint64_t fd = f(d);
        if (fd == 0 || fd <= prev) throw std::invalid_argument("lambert_rational: f must be positive and strictly increasing");
        prev = fd;
        if (fd > n_max) break;
        const Complex c = chi[d];
        if (c == Complex{}) continue;
        for (std::uint64_t n = fd, q = 1; n <= n_max; n += fd, ++q) {
            if (const int mu = mobius(q); mu != 0) b[n] += static_cast<double>(mu) * c;
        }
    }
    CoeffSeq a = lambert_convert(b, LambertDirection::LambertToTaylor);
    LambertRational out{std::move(b), std::move(a), std::nullopt, std::nullopt};
    if (auto t0 = detect_period(out.taylor)) {
        out.period = t0;
        const auto vals = out.taylor.values();
        out.rational = RationalForm{*t0, std::vector<Complex>(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(*t0))};
    }
    return out;
}

}  // namespace specdisp::arith
