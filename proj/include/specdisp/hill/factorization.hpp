#pragma once

/**
 * @file factorization.hpp
 * @brief Coefficients of f_N(x_1..x_N) = Y(x_1) Y(x_1+x_2) ... Y(x_1+...+x_N) against
 *        the product Yhat(k_1-k_2) ... Yhat(k_{N-1}-k_N) Yhat(k_N).
 */

#include <map>
#include <stdexcept>
#include <vector>

#include "specdisp/arith.hpp"

namespace specdisp::hill {

using MultiIndexSeries = std::map<std::vector<int>, Complex>;

/// Multidimensional coefficients of f_N by repeated lattice convolution.
inline MultiIndexSeries factorized_product_series(const arith::TrigPoly& Y, std::size_t N) {
    if (N == 0) throw std::invalid_argument("factorized_product_series: N must be positive");
    MultiIndexSeries f{{std::vector<int>(N, 0), Complex{1.0}}};
    for (std::size_t j = 1; j <= N; ++j) {
        // Y(x_1 + ... + x_j) carries frequency k in each of its first j slots
        MultiIndexSeries next;
        for (const auto& [m, v] : f)
            for (const auto& [k, y] : Y.coeffs()) {
                auto mk = m;
                for (std::size_t i = 0; i < j; ++i) mk[i] += k;
                next[mk] += v * y;
            }
        f = std::move(next);
    }
    return f;
}

/// Yhat(m_1 - m_2) ... Yhat(m_{N-1} - m_N) Yhat(m_N)
inline Complex factorized_coefficient(const arith::TrigPoly& Y, const std::vector<int>& m) {
    Complex p{1.0};
    for (std::size_t i = 0; i < m.size(); ++i) p *= Y.coeff(i + 1 < m.size() ? m[i] - m[i + 1] : m[i]);
    return p;
}

/// Max |coefficient of f_N - product formula| over the union of both supports.
inline double ft_factorization_check(const arith::TrigPoly& Y, std::size_t N) {
    const auto f = factorized_product_series(Y, N);
    double dev = 0.0;
    for (const auto& [m, v] : f) dev = std::max(dev, std::abs(v - factorized_coefficient(Y, m)));

    // every k-tuple of the support gives m_i = k_i + ... + k_N with a nonzero formula value
    std::vector<int> support;
    for (const auto& [k, y] : Y.coeffs()) support.push_back(k);
    if (support.empty()) return dev;
    std::vector<std::size_t> idx(N, 0);
    while (true) {
        std::vector<int> m(N);
        int acc = 0;
        for (std::size_t i = N; i-- > 0;) {
            acc += support[idx[i]];
            m[i] = acc;
        }
        if (!f.contains(m)) dev = std::max(dev, std::abs(factorized_coefficient(Y, m)));
        std::size_t p = 0;
        while (p < N && ++idx[p] == support.size()) idx[p++] = 0;
        if (p == N) break;
    }
    return dev;
}

}  // namespace specdisp::hill
