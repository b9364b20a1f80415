#pragma once

/**
 * @file dispersion.hpp
 * @brief Kinematics, dispersion laws and spectral propagation.
 *
 * The relativistic law E(gamma) = E0 + (E0/2) x^2 / sqrt(1 + x^2), x = l0 gamma,
 * is the symbol of the series operator
 *   i hbar dY/dt = E0 Y + (E0/2) sum_k (-1)^{k+1} C(-1/2, k) l0^{2k+2} d^{2k+2}Y/dx^{2k+2}
 * on plane waves e^{i gamma x}. On the decaying basis e^{-n x} the same operator
 * has the symbol E0 - (E0/2) u / sqrt(1 - u), u = (l0 n)^2, which drives ModeSum.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "specdisp/types.hpp"

namespace specdisp::dispersion {

/// Rest mass, light speed and reduced Planck constant in any consistent unit system.
struct ParticleParams {
    double m0 = 1.0;
    double c = 1.0;
    double hbar = 1.0;

    ParticleParams() = default;
    ParticleParams(double m0_, double c_, double hbar_) : m0(m0_), c(c_), hbar(hbar_) {
        if (!(m0 > 0.0) || !(c > 0.0) || !(hbar > 0.0))
            throw std::invalid_argument("ParticleParams: m0, c and hbar must be positive");
    }

    double E0() const noexcept { return m0 * c * c; }
    double l0() const noexcept { return hbar / (m0 * c); }

    /// hbar = E0 = 1 with the given Compton length (then c = l0, m0 = 1 / l0^2).
    static ParticleParams natural(double l0) {
        if (!(l0 > 0.0)) throw std::invalid_argument("ParticleParams::natural: l0 must be positive");
        return {1.0 / (l0 * l0), l0, 1.0};
    }

    /// Compton lengths in cm, natural units.
    static ParticleParams electron() { return natural(3.86e-13); }
    static ParticleParams neutrino() { return natural(0.000164); }
};

/// xi = v/c for momentum p.
inline double velocity_ratio(double p, const ParticleParams& params) {
    const double x = p / (params.m0 * params.c);
    if (std::isinf(x)) return x > 0 ? 1.0 : -1.0;
    return x / std::sqrt(1.0 + x * x);
}

inline double energy_of_momentum(double p, const ParticleParams& params) {
    const double x = p / (params.m0 * params.c);
    return params.E0() + 0.5 * params.E0() * x * x / std::sqrt(1.0 + x * x);
}

enum class LawVariant { Schrodinger, Relativistic, KleinGordon };

inline const char* to_string(LawVariant v) {
    switch (v) {
        case LawVariant::Schrodinger: return "schrodinger";
        case LawVariant::Relativistic: return "relativistic";
        case LawVariant::KleinGordon: return "klein_gordon";
    }
    return "?";
}

inline LawVariant law_from_string(const std::string& s) {
    if (s == "schrodinger") return LawVariant::Schrodinger;
    if (s == "relativistic") return LawVariant::Relativistic;
    if (s == "klein_gordon") return LawVariant::KleinGordon;
    throw std::invalid_argument("unknown dispersion law '" + s + "'");
}

class DispersionLaw {
public:
    DispersionLaw(LawVariant variant, ParticleParams params) : variant_(variant), params_(params) {}

    LawVariant variant() const noexcept { return variant_; }
    const ParticleParams& params() const noexcept { return params_; }

    /// Kinetic part along one axis, E(gamma) - E0 for the separable laws.
    double kinetic(double gamma) const {
        const double x = params_.l0() * gamma;
        switch (variant_) {
            case LawVariant::Schrodinger: return 0.5 * params_.E0() * x * x;
            case LawVariant::Relativistic:
                check_band(gamma);
                return 0.5 * params_.E0() * x * x / std::sqrt(1.0 + x * x);
            case LawVariant::KleinGordon: return params_.E0() * (std::sqrt(1.0 + x * x) - 1.0);
        }
        return 0.0;
    }

    double energy(double gamma) const { return params_.E0() + kinetic(gamma); }

    /// Energy of a frequency vector. Schrodinger and relativistic laws add kinetic
    /// parts per axis; Klein-Gordon uses |gamma|.
    double energy(std::span<const double> gamma) const {
        if (variant_ == LawVariant::KleinGordon) {
            double g2 = 0.0;
            for (double g : gamma) g2 += g * g;
            const double l0 = params_.l0();
            return params_.E0() * std::sqrt(1.0 + l0 * l0 * g2);
        }
        double e = params_.E0();
        for (double g : gamma) e += kinetic(g);
        return e;
    }

    void check_band(double gamma) const {
        if (variant_ == LawVariant::Relativistic && !(std::abs(params_.l0() * gamma) < 1.0))
            throw band_error("relativistic law requires |l0 gamma| < 1");
    }

private:
    LawVariant variant_;
    ParticleParams params_;
};

inline double dispersion_energy(double gamma, const DispersionLaw& law) { return law.energy(gamma); }

/// Uniform frequency axes with complex amplitudes stored row-major (last axis fastest).
class SpectrumGrid {
public:
    SpectrumGrid() = default;
    SpectrumGrid(std::vector<std::vector<double>> axes, std::vector<Complex> amplitudes)
        : axes_(std::move(axes)), amp_(std::move(amplitudes)) {
        if (axes_.empty() || axes_.size() > 3) throw std::invalid_argument("SpectrumGrid: 1 to 3 axes");
        std::size_t n = 1;
        for (const auto& a : axes_) {
            if (a.empty()) throw std::invalid_argument("SpectrumGrid: empty axis");
            n *= a.size();
        }
        if (amp_.size() != n) throw std::invalid_argument("SpectrumGrid: amplitude count does not match axes");
    }

    /// Uniform axis of `count` points on [lo, hi].
    static std::vector<double> uniform_axis(double lo, double hi, std::size_t count) {
        if (count == 0) throw std::invalid_argument("uniform_axis: count must be positive");
        std::vector<double> a(count);
        if (count == 1) {
            a[0] = lo;
            return a;
        }
        const double h = (hi - lo) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] = lo + h * static_cast<double>(i);
        a.back() = hi;
        return a;
    }

    /// Samples f on the product grid.
    template <class F>
    static SpectrumGrid sample(std::vector<std::vector<double>> axes, F&& f) {
        std::size_t n = 1;
        for (const auto& a : axes) n *= a.size();
        SpectrumGrid g(std::move(axes), std::vector<Complex>(n));
        std::vector<double> gamma(g.dim());
        for (std::size_t i = 0; i < n; ++i) {
            g.frequency(i, gamma);
            g.amp_[i] = f(std::span<const double>(gamma));
        }
        return g;
    }

    std::size_t dim() const noexcept { return axes_.size(); }
    std::size_t size() const noexcept { return amp_.size(); }
    bool empty() const noexcept { return amp_.empty(); }
    const std::vector<std::vector<double>>& axes() const noexcept { return axes_; }
    std::span<const Complex> amplitudes() const noexcept { return amp_; }
    std::span<Complex> amplitudes() noexcept { return amp_; }

    /// Frequency vector of flat index i.
    void frequency(std::size_t i, std::span<double> out) const {
        for (std::size_t d = dim(); d-- > 0;) {
            const std::size_t n = axes_[d].size();
            out[d] = axes_[d][i % n];
            i /= n;
        }
    }

    std::vector<double> frequency(std::size_t i) const {
        std::vector<double> g(dim());
        frequency(i, g);
        return g;
    }

    double max_abs_frequency() const {
        double m = 0.0;
        for (const auto& a : axes_)
            for (double g : a) m = std::max(m, std::abs(g));
        return m;
    }

private:
    std::vector<std::vector<double>> axes_;
    std::vector<Complex> amp_;
};

/// Multiplies every amplitude by exp(-i E(gamma) t / hbar).
inline SpectrumGrid evolve_spectrum(const SpectrumGrid& grid, double t, const DispersionLaw& law) {
    if (law.variant() == LawVariant::Relativistic)
        for (const auto& a : grid.axes())
            for (double g : a) law.check_band(g);
    SpectrumGrid out = grid;
    auto amp = out.amplitudes();
    std::vector<double> gamma(grid.dim());
    const double hbar = law.params().hbar;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        grid.frequency(i, gamma);
        amp[i] *= std::polar(1.0, -law.energy(gamma) * t / hbar);
    }
    return out;
}

namespace detail {

/// Composite Simpson weights; 3/8 rule on the last three intervals for an odd
/// interval count; trapezoid for two points; a single point is a unit point mass.
inline std::vector<double> simpson_weights(const std::vector<double>& axis) {
    const std::size_t n = axis.size();
    std::vector<double> w(n, 0.0);
    if (n == 1) {
        w[0] = 1.0;
        return w;
    }
    const double h = (axis.back() - axis.front()) / static_cast<double>(n - 1);
    if (n == 2) {
        w[0] = w[1] = h / 2.0;
        return w;
    }
    const std::size_t intervals = n - 1;
    const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (simpson_end != intervals) {
        const std::size_t i = simpson_end;
        w[i] += 3.0 * h / 8.0;
        w[i + 1] += 9.0 * h / 8.0;
        w[i + 2] += 9.0 * h / 8.0;
        w[i + 3] += 3.0 * h / 8.0;
    }
    return w;
}

inline std::vector<double> trapezoid_weights(const std::vector<double>& axis) {
    const std::size_t n = axis.size();
    if (n == 1) return {1.0};
    const double h = (axis.back() - axis.front()) / static_cast<double>(n - 1);
    std::vector<double> w(n, h);
    w.front() = w.back() = h / 2.0;
    return w;
}

inline std::vector<double> tensor_weights(const SpectrumGrid& grid, bool simpson) {
    std::vector<std::vector<double>> per_axis;
    for (const auto& a : grid.axes()) per_axis.push_back(simpson ? simpson_weights(a) : trapezoid_weights(a));
    std::vector<double> w(grid.size(), 1.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::size_t r = i;
        for (std::size_t d = grid.dim(); d-- > 0;) {
            const std::size_t n = per_axis[d].size();
            w[i] *= per_axis[d][r % n];
            r /= n;
        }
    }
    return w;
}

}  // namespace detail

struct Synthesis {
    std::vector<Complex> values;
    /// max over points of |Simpson - trapezoid|
    double error_estimate = 0.0;
};

/// (1/2pi)^dim int fhat(gamma) e^{i gamma.x} dgamma at each point (each of length dim).
inline Synthesis synthesize(const SpectrumGrid& grid, const std::vector<std::vector<double>>& points) {
    if (grid.empty()) throw std::invalid_argument("synthesize: empty grid");
    const auto ws = detail::tensor_weights(grid, true);
    const auto wt = detail::tensor_weights(grid, false);
    const double norm = std::pow(2.0 * kPi, -static_cast<double>(grid.dim()));
    std::vector<std::vector<double>> freqs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) freqs[i] = grid.frequency(i);

    Synthesis out;
    out.values.reserve(points.size());
    for (const auto& x : points) {
        if (x.size() != grid.dim()) throw std::invalid_argument("synthesize: point dimension mismatch");
        Complex s{}, st{};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double phase = 0.0;
            for (std::size_t d = 0; d < x.size(); ++d) phase += freqs[i][d] * x[d];
            const Complex term = grid.amplitudes()[i] * std::polar(1.0, phase);
            s += ws[i] * term;
            st += wt[i] * term;
        }
        out.values.push_back(norm * s);
        out.error_estimate = std::max(out.error_estimate, norm * std::abs(s - st));
    }
    return out;
}

inline Synthesis synthesize(const SpectrumGrid& grid, const std::vector<double>& x) {
    std::vector<std::vector<double>> pts;
    pts.reserve(x.size());
    for (double v : x) pts.push_back({v});
    return synthesize(grid, pts);
}

/// Modes f_n e^{-n.x} of the decaying basis; n has Dim positive components.
template <std::size_t Dim>
struct BasicModeSum {
    using Index = std::array<int, Dim>;
    struct Mode {
        Index n;
        Complex f;
    };

    std::vector<Mode> modes;
    ParticleParams params;
    int phase_sign = 1;

    BasicModeSum() = default;
    BasicModeSum(std::vector<Mode> m, ParticleParams p, int sign = 1)
        : modes(std::move(m)), params(p), phase_sign(sign) {
        validate();
    }

    void validate() const {
        if (phase_sign != 1 && phase_sign != -1) throw std::invalid_argument("ModeSum: phase sign must be +1 or -1");
        for (const auto& m : modes)
            for (int n : m.n) {
                if (n < 1) throw std::invalid_argument("ModeSum: mode indices must be >= 1");
                if (!(params.l0() * n < 1.0)) throw band_error("ModeSum: mode index must satisfy n < 1/l0");
            }
    }
};

using ModeSum = BasicModeSum<1>;
using ModeSum3 = BasicModeSum<3>;

namespace detail {

/// E0 u / (2 sqrt(|u - 1|)), u = (l0 n)^2
inline double mode_rate(int n, const ParticleParams& p) {
    const double u = std::pow(p.l0() * n, 2);
    return p.E0() * u / (2.0 * std::sqrt(std::abs(u - 1.0)));
}

}  // namespace detail

/// Y(x,t) = e^{-i E0 t/hbar} sum f_n exp(i s t sum_axes E0 l0^2 n^2 / (2 hbar sqrt|l0^2 n^2 - 1|)) e^{-n.x}
template <std::size_t Dim>
Complex mode_sum_solution(const BasicModeSum<Dim>& ms, const std::array<double, Dim>& x, double t) {
    for (double xi : x)
        if (!(xi > 0.0)) throw std::domain_error("mode_sum_solution: x must be positive");
    const auto& p = ms.params;
    Complex y{};
    for (const auto& m : ms.modes) {
        double rate = 0.0, decay = 0.0;
        for (std::size_t d = 0; d < Dim; ++d) {
            rate += detail::mode_rate(m.n[d], p);
            decay += m.n[d] * x[d];
        }
        y += m.f * std::polar(std::exp(-decay), ms.phase_sign * rate * t / p.hbar);
    }
    return std::polar(1.0, -p.E0() * t / p.hbar) * y;
}

inline Complex mode_sum_solution(const ModeSum& ms, double x, double t) {
    return mode_sum_solution<1>(ms, std::array<double, 1>{x}, t);
}

/// C(-1/2, k) for k = 0..K.
inline std::vector<double> binomial_minus_half(std::size_t K) {
    std::vector<double> c(K + 1);
    c[0] = 1.0;
    for (std::size_t k = 0; k < K; ++k) c[k + 1] = c[k] * (-0.5 - static_cast<double>(k)) / static_cast<double>(k + 1);
    return c;
}

/// (E0/2) sum_{k<=K} (-1)^{k+1} C(-1/2,k) l0^{2k+2} lambda^{2k+2}, where lambda is the
/// eigenvalue of d/dx on the mode (i gamma for plane waves, -n for the decaying basis).
inline Complex truncated_symbol(Complex lambda, const ParticleParams& p, std::size_t K) {
    const auto c = binomial_minus_half(K);
    const Complex z = p.l0() * lambda;
    const Complex z2 = z * z;
    Complex pw = z2, s{};
    for (std::size_t k = 0; k <= K; ++k) {
        s += ((k % 2 == 0) ? -1.0 : 1.0) * c[k] * pw;
        pw *= z2;
    }
    return 0.5 * p.E0() * s;
}

struct ProbePoint {
    std::vector<double> x;
    double t = 0.0;
};

struct ResidualStats {
    double max = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
};

namespace detail {

inline void accumulate(ResidualStats& st, Complex residual, Complex y) {
    const double r = std::abs(residual) / std::max(std::abs(y), 1e-300);
    st.max = std::max(st.max, r);
    st.mean += r;
    ++st.count;
}

inline void finish(ResidualStats& st) {
    if (st.count) st.mean /= static_cast<double>(st.count);
}

}  // namespace detail

/**
 * Residual of the order-K truncated series operator on a mode sum, evaluated
 * analytically per mode and normalized by |Y| at each probe.
 */
template <std::size_t Dim>
ResidualStats truncated_pde_residual(const BasicModeSum<Dim>& ms, std::size_t K, const std::vector<ProbePoint>& probes) {
    const auto& p = ms.params;
    for (const auto& m : ms.modes)
        for (int n : m.n)
            if (p.l0() * n > 0.9) throw band_error("truncated_pde_residual: requires l0 n <= 0.9");
    ResidualStats st;
    for (const auto& pr : probes) {
        if (pr.x.size() != Dim) throw std::invalid_argument("truncated_pde_residual: probe dimension mismatch");
        Complex y{}, r{};
        for (const auto& m : ms.modes) {
            double rate = 0.0, decay = 0.0;
            Complex rhs = p.E0();
            for (std::size_t d = 0; d < Dim; ++d) {
                rate += detail::mode_rate(m.n[d], p);
                decay += m.n[d] * pr.x[d];
                rhs += truncated_symbol(-static_cast<double>(m.n[d]), p, K);
            }
            const Complex term = m.f * std::polar(std::exp(-decay), ms.phase_sign * rate * pr.t / p.hbar);
            // i hbar d/dt acting on the mode
            const double lhs = p.E0() - ms.phase_sign * rate;
            y += term;
            r += (lhs - rhs) * term;
        }
        const Complex carrier = std::polar(1.0, -p.E0() * pr.t / p.hbar);
        detail::accumulate(st, carrier * r, carrier * y);
    }
    detail::finish(st);
    return st;
}

/**
 * Same residual for a spectrum propagated by `law`: the time derivative
 * contributes E_law(gamma), the truncated operator its plane-wave symbol.
 * The grid is treated as the discrete mode set given by its quadrature weights.
 */
inline ResidualStats truncated_pde_residual(const SpectrumGrid& initial, const DispersionLaw& law, std::size_t K,
                                            const std::vector<ProbePoint>& probes) {
    const auto& p = law.params();
    if (initial.max_abs_frequency() * p.l0() > 0.9) throw band_error("truncated_pde_residual: requires l0 |gamma| <= 0.9");
    const auto w = detail::tensor_weights(initial, true);
    std::vector<Complex> mismatch(initial.size());
    std::vector<double> energy(initial.size());
    for (std::size_t i = 0; i < initial.size(); ++i) {
        const auto g = initial.frequency(i);
        Complex rhs = p.E0();
        for (double gd : g) rhs += truncated_symbol(Complex(0.0, gd), p, K);
        energy[i] = law.energy(g);
        mismatch[i] = energy[i] - rhs;
    }
    ResidualStats st;
    for (const auto& pr : probes) {
        if (pr.x.size() != initial.dim()) throw std::invalid_argument("truncated_pde_residual: probe dimension mismatch");
        Complex y{}, r{};
        for (std::size_t i = 0; i < initial.size(); ++i) {
            const auto g = initial.frequency(i);
            double phase = -energy[i] * pr.t / p.hbar;
            for (std::size_t d = 0; d < g.size(); ++d) phase += g[d] * pr.x[d];
            const Complex term = w[i] * initial.amplitudes()[i] * std::polar(1.0, phase);
            y += term;
            r += mismatch[i] * term;
        }
        detail::accumulate(st, r, y);
    }
    detail::finish(st);
    return st;
}

struct PhaseSignResolution {
    int sign = 1;
    double residual_plus = 0.0;
    double residual_minus = 0.0;
};

/// Evaluates the order-K residual for both phase signs and keeps the smaller.
template <std::size_t Dim>
PhaseSignResolution resolve_phase_sign(BasicModeSum<Dim> ms, const std::vector<ProbePoint>& probes, std::size_t K = 40) {
    PhaseSignResolution r;
    ms.phase_sign = 1;
    r.residual_plus = truncated_pde_residual(ms, K, probes).max;
    ms.phase_sign = -1;
    r.residual_minus = truncated_pde_residual(ms, K, probes).max;
    r.sign = r.residual_plus <= r.residual_minus ? 1 : -1;
    return r;
}

}  // namespace specdisp::dispersion
