// mode_profile.hpp - spatial shape of the atom-field coupling lambda(z)
//
// Natural units hbar = m = 1 are used throughout the library: momenta,
// couplings, detunings, lengths and times are plain dimensionless doubles.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mazer/errors.hpp"

namespace mazer {

/// Top-hat coupling: lambda0 on 0 < z < length, zero elsewhere.
struct MezaProfile {
    double lambda0 = 1.0;
    double length = 1.0;
};

/// lambda0 * sech^2(z / waist)
struct SechProfile {
    double lambda0 = 1.0;
    double waist = 1.0;
};

/// lambda0 * exp(-z^2 / waist^2)
struct GaussianProfile {
    double lambda0 = 1.0;
    double waist = 1.0;
};

/// Tabulated coupling, linearly interpolated and zero outside the samples.
struct CustomProfile {
    std::vector<double> positions;  // strictly ascending
    std::vector<double> couplings;  // non-negative, same length
};

using ModeProfile = std::variant<MezaProfile, SechProfile, GaussianProfile, CustomProfile>;

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

inline void validate(const ModeProfile& profile) {
    std::visit(detail::overloaded{
                   [](const MezaProfile& p) {
                       detail::require(std::isfinite(p.lambda0) && p.lambda0 >= 0.0, "meza: lambda0 must be >= 0");
                       detail::require(std::isfinite(p.length) && p.length > 0.0, "meza: length must be > 0");
                   },
                   [](const SechProfile& p) {
                       detail::require(std::isfinite(p.lambda0) && p.lambda0 >= 0.0, "sech: lambda0 must be >= 0");
                       detail::require(std::isfinite(p.waist) && p.waist > 0.0, "sech: waist must be > 0");
                   },
                   [](const GaussianProfile& p) {
                       detail::require(std::isfinite(p.lambda0) && p.lambda0 >= 0.0,
                                       "gaussian: lambda0 must be >= 0");
                       detail::require(std::isfinite(p.waist) && p.waist > 0.0, "gaussian: waist must be > 0");
                   },
                   [](const CustomProfile& p) {
                       detail::require(p.positions.size() >= 2, "custom: need at least two samples");
                       detail::require(p.positions.size() == p.couplings.size(),
                                       "custom: positions and couplings differ in length");
                       for (std::size_t i = 0; i < p.positions.size(); ++i) {
                           detail::require(std::isfinite(p.positions[i]) && std::isfinite(p.couplings[i]),
                                           "custom: non-finite sample");
                           detail::require(p.couplings[i] >= 0.0, "custom: negative coupling");
                           if (i > 0)
                               detail::require(p.positions[i] > p.positions[i - 1],
                                               "custom: positions must be strictly ascending");
                       }
                   },
               },
               profile);
}

/// lambda(z). Total for finite z; returns 0 outside the support.
inline double eval_profile(const ModeProfile& profile, double z) {
    return std::visit(
        detail::overloaded{
            [z](const MezaProfile& p) { return (z > 0.0 && z < p.length) ? p.lambda0 : 0.0; },
            [z](const SechProfile& p) {
                const double c = std::cosh(z / p.waist);
                return std::isfinite(c) ? p.lambda0 / (c * c) : 0.0;
            },
            [z](const GaussianProfile& p) {
                const double u = z / p.waist;
                return p.lambda0 * std::exp(-u * u);
            },
            [z](const CustomProfile& p) {
                const auto& x = p.positions;
                if (z < x.front() || z > x.back()) return 0.0;
                auto it = std::upper_bound(x.begin(), x.end(), z);
                if (it == x.end()) return p.couplings.back();
                const auto hi = static_cast<std::size_t>(it - x.begin());
                const auto lo = hi - 1;
                const double w = (z - x[lo]) / (x[hi] - x[lo]);
                return (1.0 - w) * p.couplings[lo] + w * p.couplings[hi];
            },
        },
        profile);
}

/// Maximum of lambda(z).
inline double peak_coupling(const ModeProfile& profile) {
    return std::visit(detail::overloaded{
                          [](const CustomProfile& p) {
                              return *std::max_element(p.couplings.begin(), p.couplings.end());
                          },
                          [](const auto& p) { return p.lambda0; },
                      },
                      profile);
}

/// Characteristic length over which lambda(z) varies (waist, meza length,
/// or the tabulated extent for custom profiles).
inline double length_scale(const ModeProfile& profile) {
    return std::visit(detail::overloaded{
                          [](const MezaProfile& p) { return p.length; },
                          [](const SechProfile& p) { return p.waist; },
                          [](const GaussianProfile& p) { return p.waist; },
                          [](const CustomProfile& p) {
                              double h = p.positions.back() - p.positions.front();
                              for (std::size_t i = 1; i < p.positions.size(); ++i)
                                  h = std::min(h, 4.0 * (p.positions[i] - p.positions[i - 1]));
                              return h;
                          },
                      },
                      profile);
}

/// Interval [lo, hi] outside of which lambda(z) < rel * peak.
inline std::pair<double, double> support(const ModeProfile& profile, double rel = 1e-8) {
    return std::visit(detail::overloaded{
                          [](const MezaProfile& p) { return std::pair{0.0, p.length}; },
                          [rel](const SechProfile& p) {
                              // 4 exp(-2|z|/L) bounds sech^2 from above
                              const double r = 0.5 * p.waist * std::log(4.0 / rel);
                              return std::pair{-r, r};
                          },
                          [rel](const GaussianProfile& p) {
                              const double r = p.waist * std::sqrt(std::log(1.0 / rel));
                              return std::pair{-r, r};
                          },
                          [](const CustomProfile& p) { return std::pair{p.positions.front(), p.positions.back()}; },
                      },
                      profile);
}

inline std::string_view profile_name(const ModeProfile& profile) {
    return std::visit(detail::overloaded{
                          [](const MezaProfile&) { return std::string_view{"meza"}; },
                          [](const SechProfile&) { return std::string_view{"sech"}; },
                          [](const GaussianProfile&) { return std::string_view{"gaussian"}; },
                          [](const CustomProfile&) { return std::string_view{"custom"}; },
                      },
                      profile);
}

/// Builds a profile of the named family with the given peak and length.
inline ModeProfile make_profile(std::string_view kind, double lambda0, double length) {
    ModeProfile p;
    if (kind == "meza")
        p = MezaProfile{lambda0, length};
    else if (kind == "sech")
        p = SechProfile{lambda0, length};
    else if (kind == "gaussian")
        p = GaussianProfile{lambda0, length};
    else
        throw InvalidArgument("unknown profile kind '" + std::string(kind) + "'");
    validate(p);
    return p;
}

}  // namespace mazer
