// analytic_scattering.hpp - closed-form dressed amplitudes for the meza and
// sech^2 couplings at zero detuning, plus coefficient-level observables.
//
// At zero detuning each excitation manifold decouples into two dressed
// channels scattering off +lambda(z) sqrt(n+1) (repulsive, "+") and
// -lambda(z) sqrt(n+1) (attractive, "-"). Amplitudes follow the convention
//   psi ~ e^{ikz} + rho e^{-ikz}   (z -> -inf),   psi ~ tau e^{ikz}   (z -> +inf)
// with the reflection phase referenced to the centre of the coupling region.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "mazer/complex_gamma.hpp"
#include "mazer/errors.hpp"
#include "mazer/mode_profile.hpp"

namespace mazer {

struct ChannelWavenumbers {
    double k = 0.0;
    cplx k_plus;         // sqrt(k^2 - kappa_n^2), positive-imaginary below threshold
    double k_minus = 0;  // sqrt(k^2 + kappa_n^2)
    double kappa = 0;    // sqrt(2 lambda0)
    double kappa_n = 0;  // kappa (n+1)^(1/4)
};

struct DressedCoefficients {
    cplx rho_plus, rho_minus;
    cplx tau_plus, tau_minus;
};

struct BareCoefficients {
    cplx r_e, r_g;
    cplx t_e, t_g;

    [[nodiscard]] double excited_population() const { return std::norm(r_e) + std::norm(t_e); }
    [[nodiscard]] double ground_population() const { return std::norm(r_g) + std::norm(t_g); }
    [[nodiscard]] double total() const { return excited_population() + ground_population(); }
};

inline double kappa_n(double lambda0, int n) {
    return std::sqrt(2.0 * lambda0) * std::pow(static_cast<double>(n + 1), 0.25);
}

inline ChannelWavenumbers channel_wavenumbers(double k, int n, double lambda0) {
    ChannelWavenumbers w;
    w.k = k;
    w.kappa = std::sqrt(2.0 * lambda0);
    w.kappa_n = kappa_n(lambda0, n);
    const double kn2 = w.kappa_n * w.kappa_n;
    w.k_plus = std::sqrt(cplx{k * k - kn2, 0.0});
    w.k_minus = std::sqrt(k * k + kn2);
    return w;
}

namespace detail {

inline void check_scattering_args(double k, int n, double lambda0, double length, const char* who) {
    std::ostringstream os;
    if (!(k > 0.0) || !std::isfinite(k)) os << who << ": incident momentum must be > 0";
    else if (n < 0) os << who << ": photon number must be >= 0";
    else if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) os << who << ": lambda0 must be >= 0";
    else if (!(length > 0.0) || !std::isfinite(length)) os << who << ": length must be > 0";
    if (!os.str().empty()) throw InvalidArgument(os.str());
}

struct ChannelAmplitudes {
    cplx rho, tau;
};

// Square step of height q2 - k^2 (in units of k^2/2) over a length l.
// With q^2 = k^2 -+ kappa_n^2 real, cos(ql) and sin(ql)/q are real and
// entire in q^2, which removes the k = kappa_n singularity: Sigma sin(ql)
// = (q^2 + k^2)/(2k) * sin(ql)/q and likewise for Delta.
inline ChannelAmplitudes meza_channel(double k, double q2, double l) {
    const cplx i{0.0, 1.0};
    const cplx phase = std::exp(-i * k * l);
    const double a = (q2 - k * k) / (2.0 * k);  // Delta * q / sin -> Delta sin(ql) = a * s
    const double b = (q2 + k * k) / (2.0 * k);  // Sigma sin(ql) = b * s
    constexpr double series_cutoff = 1e-6;

    if (q2 >= 0.0) {
        const double q = std::sqrt(q2);
        const double x = q * l;
        const double c = std::cos(x);
        const double s = (x < series_cutoff) ? l * (1.0 - x * x / 6.0) : std::sin(x) / q;
        const cplx tau = phase / (c - i * b * s);
        return {i * a * s * tau, tau};
    }

    const double eta = std::sqrt(-q2);
    const double x = eta * l;
    if (x < series_cutoff) {
        const double c = 1.0 + 0.5 * x * x;
        const double s = l * (1.0 + x * x / 6.0);
        const cplx tau = phase / (c - i * b * s);
        return {i * a * s * tau, tau};
    }
    // Scale cosh and sinh by exp(-x) so deep tunnelling does not overflow.
    const double e2 = std::exp(-2.0 * x);
    const double c = 0.5 * (1.0 + e2);
    const double s = 0.5 * (1.0 - e2) / eta;
    const cplx denom = c - i * b * s;
    return {i * a * s / denom * phase, phase * std::exp(-x) / denom};
}

// log(cosh(w)) for complex w without overflow.
inline cplx log_cosh(cplx w) {
    if (w.real() < 0.0) w = -w;
    return w + std::log(0.5 * (1.0 + std::exp(-2.0 * w)));
}

// Poschl-Teller channel for V(z) = sign * v0 * sech^2(z/L).
inline ChannelAmplitudes sech_channel(double k, double v0, double L, double sign) {
    const cplx i{0.0, 1.0};
    const double kl = k * L;
    const cplx xi = std::sqrt(cplx{sign * 2.0 * v0 * L * L - 0.25, 0.0});

    // tau = G(1/2 - i(kL + xi)) G(1/2 - i(kL - xi)) / (G(-ikL) G(1 - ikL))
    const cplx log_tau = log_gamma(0.5 - i * (kl + xi)) + log_gamma(0.5 - i * (kl - xi)) -
                         log_gamma(cplx{0.0, -kl}) - log_gamma(cplx{1.0, -kl});
    const cplx tau = std::exp(log_tau);

    // rho / tau = G(ikL) G(1 - ikL) / (G(1/2 + i xi) G(1/2 - i xi))
    //           = [pi / (i sinh(pi kL))] * [cosh(pi xi) / pi]
    // The reflected form stays finite where G(1/2 - i xi) has a pole, which
    // is exactly the reflectionless case.
    const double pk = std::numbers::pi * kl;
    const double log_sinh = (pk > 20.0) ? pk + std::log(0.5 * (1.0 - std::exp(-2.0 * pk))) : std::log(std::sinh(pk));
    const cplx rho = std::exp(log_tau + log_cosh(std::numbers::pi * xi) - log_sinh) * (-i);
    return {rho, tau};
}

}  // namespace detail

/// Dressed amplitudes for the top-hat coupling of length l in manifold n.
inline DressedCoefficients meza_dressed(double k, int n, double lambda0, double l) {
    detail::check_scattering_args(k, n, lambda0, l, "meza_dressed");
    const double kn = kappa_n(lambda0, n);
    const auto plus = detail::meza_channel(k, k * k - kn * kn, l);
    const auto minus = detail::meza_channel(k, k * k + kn * kn, l);
    return {plus.rho, minus.rho, plus.tau, minus.tau};
}

/// Dressed amplitudes for lambda0 sech^2(z/L) at zero detuning.
inline DressedCoefficients sech_dressed(double k, int n, double lambda0, double waist) {
    detail::check_scattering_args(k, n, lambda0, waist, "sech_dressed");
    const double v0 = lambda0 * std::sqrt(static_cast<double>(n + 1));
    const auto plus = detail::sech_channel(k, v0, waist, +1.0);
    const auto minus = detail::sech_channel(k, v0, waist, -1.0);
    return {plus.rho, minus.rho, plus.tau, minus.tau};
}

inline BareCoefficients bare_from_dressed(const DressedCoefficients& d) {
    return {0.5 * (d.rho_plus + d.rho_minus), 0.5 * (d.rho_plus - d.rho_minus),
            0.5 * (d.tau_plus + d.tau_minus), 0.5 * (d.tau_plus - d.tau_minus)};
}

/// |T_e|^2 + |T_g|^2
inline double transmission_probability(const BareCoefficients& b) {
    return std::norm(b.t_e) + std::norm(b.t_g);
}

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
inline double binary_entropy(double p) {
    auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
    return term(p) + term(1.0 - p);
}

inline constexpr double population_tolerance = 1e-9;

/// Base-2 von Neumann entropy of the reduced field state, from the
/// internal-state populations. A unitarity defect up to 1e-9 is absorbed by
/// renormalizing; larger defects throw.
inline double entropy(const BareCoefficients& b) {
    const double pe = b.excited_population();
    const double pg = b.ground_population();
    const double sum = pe + pg;
    if (!(std::abs(sum - 1.0) <= population_tolerance)) {
        std::ostringstream os;
        os << "entropy: populations sum to " << sum << ", unitarity defect exceeds " << population_tolerance;
        throw UnitarityError(os.str());
    }
    return binary_entropy(pe / sum);
}

/// Lengths l = m pi / kappa_n, m = 1..m_max, where the meza repulsive channel
/// is transparent.
inline std::vector<double> meza_resonance_lengths(int n, double lambda0, int m_max) {
    if (!(lambda0 > 0.0)) throw InvalidArgument("meza_resonance_lengths: lambda0 must be > 0");
    std::vector<double> out;
    const double kn = kappa_n(lambda0, n);
    for (int m = 1; m <= m_max; ++m) out.push_back(m * std::numbers::pi / kn);
    return out;
}

/// Waists with kappa_n L = sqrt(m(m+1)), m = 1..m_max, where the attractive
/// sech^2 channel is reflectionless.
inline std::vector<double> sech_resonance_lengths(int n, double lambda0, int m_max) {
    if (!(lambda0 > 0.0)) throw InvalidArgument("sech_resonance_lengths: lambda0 must be > 0");
    std::vector<double> out;
    const double kn = kappa_n(lambda0, n);
    for (int m = 1; m <= m_max; ++m) out.push_back(std::sqrt(static_cast<double>(m) * (m + 1)) / kn);
    return out;
}

/// Dispatches to the closed form matching the profile family.
inline DressedCoefficients analytic_dressed(const ModeProfile& profile, double k, int n) {
    if (const auto* m = std::get_if<MezaProfile>(&profile)) return meza_dressed(k, n, m->lambda0, m->length);
    if (const auto* s = std::get_if<SechProfile>(&profile)) return sech_dressed(k, n, s->lambda0, s->waist);
    throw InvalidArgument("no closed-form amplitudes for the " + std::string(profile_name(profile)) + " profile");
}

inline BareCoefficients analytic_bare(const ModeProfile& profile, double k, int n) {
    return bare_from_dressed(analytic_dressed(profile, k, n));
}

}  // namespace mazer
