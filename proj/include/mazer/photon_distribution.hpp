// photon_distribution.hpp - initial photon-number statistics of the cavity

#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "mazer/errors.hpp"

namespace mazer {

enum class PhotonKind { vacuum, coherent, thermal };

inline std::string_view to_string(PhotonKind k) {
    switch (k) {
        case PhotonKind::vacuum: return "vacuum";
        case PhotonKind::coherent: return "coherent";
        case PhotonKind::thermal: return "thermal";
    }
    return "?";
}

inline PhotonKind parse_photon_kind(std::string_view s) {
    if (s == "vacuum") return PhotonKind::vacuum;
    if (s == "coherent") return PhotonKind::coherent;
    if (s == "thermal") return PhotonKind::thermal;
    throw InvalidArgument("unknown photon distribution '" + std::string(s) + "'");
}

struct PhotonWeight {
    int n;
    double w;
};

/// Truncated and renormalized |c_n|^2. Weights are listed for n = 0..N
/// contiguously.
struct PhotonDistribution {
    PhotonKind kind = PhotonKind::vacuum;
    double mean = 0.0;
    double truncation = 1e-10;
    std::vector<PhotonWeight> weights{{0, 1.0}};

    [[nodiscard]] double total() const {
        double s = 0.0;
        for (const auto& p : weights) s += p.w;
        return s;
    }
};

inline constexpr double default_photon_truncation = 1e-10;

/// |c_n|^2 for a coherent (Poisson) or thermal (Bose-Einstein) field of mean
/// n0, kept up to the smallest N whose cumulative mass reaches 1 - eps.
inline PhotonDistribution photon_weights(PhotonKind kind, double n0, double eps = default_photon_truncation) {
    if (!(n0 >= 0.0) || !std::isfinite(n0)) throw InvalidArgument("photon_weights: mean photon number must be >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("photon_weights: truncation must lie in (0, 1)");

    PhotonDistribution d;
    d.kind = kind;
    d.mean = (kind == PhotonKind::vacuum) ? 0.0 : n0;
    d.truncation = eps;
    d.weights.clear();

    if (kind == PhotonKind::vacuum || n0 == 0.0) {
        d.weights.push_back({0, 1.0});
        return d;
    }

    auto weight = [&](int n) {
        const double dn = n;
        if (kind == PhotonKind::coherent) return std::exp(dn * std::log(n0) - n0 - std::lgamma(dn + 1.0));
        return std::exp(dn * std::log(n0 / (n0 + 1.0))) / (n0 + 1.0);
    };

    constexpr int max_terms = 10'000'000;
    double cumulative = 0.0;
    for (int n = 0; n < max_terms; ++n) {
        const double w = weight(n);
        d.weights.push_back({n, w});
        cumulative += w;
        if (cumulative >= 1.0 - eps) break;
    }
    for (auto& p : d.weights) p.w /= cumulative;
    return d;
}

}  // namespace mazer
