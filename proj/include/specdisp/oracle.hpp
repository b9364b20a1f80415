#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force reference computations used to arbitrate the closed forms.
 *
 * Nothing here depends on the other modules' formulas: the RK4 integrator sees
 * only V(x), the binomial sums are accumulated term by term and the PDE
 * residual uses plain central-difference stencils.
 */

#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "specdisp/types.hpp"

namespace specdisp::oracle {

/// y'' = V(x) y on [x0, x1] from (y0, dy0).
struct OdeProblem {
    std::function<Complex(double)> V;
    double x0 = 0.0;
    Complex y0{1.0};
    Complex dy0{};
    double x1 = 1.0;
    double step = 1e-3;
};

struct Trajectory {
    std::vector<double> x;
    std::vector<Complex> y;
    std::vector<Complex> dy;

    Complex final_y() const { return y.back(); }
};

/// Classical fixed-step RK4 on (y, y'). The step is shrunk slightly so that it divides the interval.
inline Trajectory integrate_ode(const OdeProblem& p) {
    if (!(p.step > 0.0)) throw std::invalid_argument("integrate_ode: step must be positive");
    if (!std::isfinite(p.x0) || !std::isfinite(p.x1)) throw std::invalid_argument("integrate_ode: interval must be finite");
    const double span = p.x1 - p.x0;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(span) / p.step - 1e-9)));
    const double h = span / static_cast<double>(n);

    Trajectory tr;
    tr.x.reserve(n + 1);
    tr.y.reserve(n + 1);
    tr.dy.reserve(n + 1);
    Complex y = p.y0, v = p.dy0;
    tr.x.push_back(p.x0);
    tr.y.push_back(y);
    tr.dy.push_back(v);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = p.x0 + h * static_cast<double>(i);
        const Complex Va = p.V(x), Vm = p.V(x + 0.5 * h), Vb = p.V(x + h);
        const Complex k1y = v, k1v = Va * y;
        const Complex k2y = v + 0.5 * h * k1v, k2v = Vm * (y + 0.5 * h * k1y);
        const Complex k3y = v + 0.5 * h * k2v, k3v = Vm * (y + 0.5 * h * k2y);
        const Complex k4y = v + h * k3v, k4v = Vb * (y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        const double xn = (i + 1 == n) ? p.x1 : p.x0 + h * static_cast<double>(i + 1);
        if (!std::isfinite(std::abs(y)) || !std::isfinite(std::abs(v))) {
            std::ostringstream os;
            os.precision(17);
            os << "integrate_ode: overflow at x = " << xn;
            throw numerical_error(os.str());
        }
        tr.x.push_back(xn);
        tr.y.push_back(y);
        tr.dy.push_back(v);
    }
    return tr;
}

/// CSV columns x, Re y, Im y, Re y', Im y'.
inline void write_csv(const Trajectory& tr, std::ostream& os) {
    const auto old = os.precision(17);
    os << "x,re_y,im_y,re_dy,im_dy\n";
    for (std::size_t i = 0; i < tr.x.size(); ++i)
        os << tr.x[i] << ',' << tr.y[i].real() << ',' << tr.y[i].imag() << ',' << tr.dy[i].real() << ','
           << tr.dy[i].imag() << '\n';
    os.precision(old);
}

/// sum_{n=0}^{K} C(-1/2, n) x^{2n+2}
inline double binomial_series_partial(double x, std::size_t K) {
    double c = 1.0, pw = x * x, s = 0.0;
    for (std::size_t n = 0; n <= K; ++n) {
        s += c * pw;
        c *= (-0.5 - static_cast<double>(n)) / static_cast<double>(n + 1);
        pw *= x * x;
    }
    return s;
}

/// |C(-1/2, K+1)| x^{2K+4} / (1 - x^2), a majorant of the tail for |x| < 1.
inline double binomial_tail_bound(double x, std::size_t K) {
    double c = 1.0;
    for (std::size_t n = 0; n <= K; ++n) c *= (0.5 + static_cast<double>(n)) / static_cast<double>(n + 1);
    return c * std::pow(x * x, static_cast<double>(K + 2)) / (1.0 - x * x);
}

/// Y sampled on a uniform space-time lattice: values[j][i] = Y(x0 + i hx, t0 + j ht).
struct SpaceTimeSamples {
    double x0 = 0.0, hx = 1.0;
    double t0 = 0.0, ht = 1.0;
    std::vector<std::vector<Complex>> values;

    template <class F>
    static SpaceTimeSamples sample(F&& f, double x0, double hx, std::size_t nx, double t0, double ht, std::size_t nt) {
        SpaceTimeSamples s{x0, hx, t0, ht, {}};
        s.values.assign(nt, std::vector<Complex>(nx));
        for (std::size_t j = 0; j < nt; ++j)
            for (std::size_t i = 0; i < nx; ++i)
                s.values[j][i] = f(x0 + hx * static_cast<double>(i), t0 + ht * static_cast<double>(j));
        return s;
    }
};

struct FdResidual {
    double max_abs = 0.0;
    double rms = 0.0;
    /// max_abs / max |Y| over the evaluated points
    double normalized = 0.0;
    std::size_t points = 0;
};

/**
 * i hbar Y_t - E0 Y - (E0/2) sum_{k<=K} (-1)^{k+1} C(-1/2,k) l0^{2k+2} D^{2k+2} Y with
 * D^{2m} the m-fold second central difference and Y_t the central time difference.
 * Second order in hx and ht.
 */
inline FdResidual finite_diff_residual(const SpaceTimeSamples& s, double E0, double l0, double hbar, std::size_t K) {
    const std::size_t nt = s.values.size();
    if (nt < 3) throw std::invalid_argument("finite_diff_residual: need at least 3 time levels");
    const std::size_t nx = s.values.front().size();
    const std::size_t half = K + 1;
    if (nx < 2 * K + 3) throw std::invalid_argument("finite_diff_residual: need at least 2K+3 spatial points");
    for (const auto& row : s.values)
        if (row.size() != nx) throw std::invalid_argument("finite_diff_residual: ragged samples");

    std::vector<double> coef(K + 1);
    double c = 1.0;
    for (std::size_t k = 0; k <= K; ++k) {
        coef[k] = ((k % 2 == 0) ? -1.0 : 1.0) * c * std::pow(l0 / s.hx, 2.0 * static_cast<double>(k + 1));
        c *= (-0.5 - static_cast<double>(k)) / static_cast<double>(k + 1);
    }

    FdResidual out;
    double ymax = 0.0, sq = 0.0;
    for (std::size_t j = 1; j + 1 < nt; ++j) {
        const auto& row = s.values[j];
        for (std::size_t i = half; i + half < nx; ++i) {
            // repeated second differences on the window [i - half, i + half]
            std::vector<Complex> w(row.begin() + static_cast<std::ptrdiff_t>(i - half),
                                   row.begin() + static_cast<std::ptrdiff_t>(i + half + 1));
            Complex series{};
            for (std::size_t k = 0; k <= K; ++k) {
                std::vector<Complex> d(w.size() - 2);
                for (std::size_t q = 0; q < d.size(); ++q) d[q] = w[q] - 2.0 * w[q + 1] + w[q + 2];
                w = std::move(d);
                series += coef[k] * w[w.size() / 2];
            }
            const Complex yt = (s.values[j + 1][i] - s.values[j - 1][i]) / (2.0 * s.ht);
            const Complex r = kI * hbar * yt - E0 * row[i] - 0.5 * E0 * series;
            out.max_abs = std::max(out.max_abs, std::abs(r));
            sq += std::norm(r);
            ymax = std::max(ymax, std::abs(row[i]));
            ++out.points;
        }
    }
    out.rms = std::sqrt(sq / static_cast<double>(out.points));
    out.normalized = out.max_abs / std::max(ymax, 1e-300);
    return out;
}

}  // namespace specdisp::oracle
