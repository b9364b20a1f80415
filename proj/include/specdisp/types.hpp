#pragma once

/**
 * @file types.hpp
 * @brief Shared scalar aliases and error types.
 *
 * Every module reports precondition failures with one of the exception
 * types below. They all derive from std::runtime_error or std::domain_error
 * so callers that do not care about the distinction can catch the base.
 */

#include <complex>
#include <stdexcept>
#include <string>

namespace specdisp {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

/// Argument lies on a pole of the function being evaluated.
class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A triangular or series inversion hit a vanishing leading coefficient.
class singular_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Frequency outside the band |l0 * gamma| < 1 (or the stricter residual band).
class band_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A coefficient recurrence met a zero denominator.
class resonance_error : public std::domain_error {
public:
    explicit resonance_error(std::size_t k)
        : std::domain_error("resonant recurrence at k = " + std::to_string(k)), index(k) {}
    std::size_t index;
};

/// A quadrature or iteration failed to produce a finite answer.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace specdisp
