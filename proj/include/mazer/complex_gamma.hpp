// complex_gamma.hpp - Gamma function on the complex plane
//
// Lanczos approximation (g = 7, 9 terms) on Re(w) >= 1/2, reflection formula
// elsewhere. Products and ratios of Gamma values with large imaginary
// arguments under- or overflow quickly, so the primary entry point is
// log_gamma; callers combine logarithms and exponentiate once.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "mazer/errors.hpp"

namespace mazer {

using cplx = std::complex<double>;

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coeff = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline cplx log_gamma_right(cplx w) {
    const cplx z = w - 1.0;
    cplx x = lanczos_coeff[0];
    for (std::size_t i = 1; i < lanczos_coeff.size(); ++i) x += lanczos_coeff[i] / (z + static_cast<double>(i));
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

/// log(sin(pi w)) without overflow for large |Im w|.
inline cplx log_sin_pi(cplx w) {
    const cplx i{0.0, 1.0};
    const double pi = std::numbers::pi;
    if (w.imag() >= 0.0) {
        // sin(pi w) = exp(-i pi w) (exp(2 i pi w) - 1) / (2i)
        return -i * pi * w + std::log((std::exp(2.0 * i * pi * w) - 1.0) / (2.0 * i));
    }
    return i * pi * w + std::log((1.0 - std::exp(-2.0 * i * pi * w)) / (2.0 * i));
}

inline bool is_gamma_pole(cplx w) {
    return w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real());
}

}  // namespace detail

/// A logarithm of Gamma(w). exp(log_gamma(w)) == Gamma(w); the imaginary part
/// is not reduced to the principal branch.
inline cplx log_gamma(cplx w) {
    if (detail::is_gamma_pole(w)) {
        std::ostringstream os;
        os << "complex_gamma: pole at w = " << w.real();
        throw PoleError(os.str());
    }
    if (w.real() >= 0.5) return detail::log_gamma_right(w);
    // Gamma(w) Gamma(1 - w) = pi / sin(pi w)
    return std::log(std::numbers::pi) - detail::log_sin_pi(w) - detail::log_gamma_right(1.0 - w);
}

inline cplx complex_gamma(cplx w) { return std::exp(log_gamma(w)); }

}  // namespace mazer
