// ensemble.hpp - incoherent averaging of scattering observables over the
// atomic momentum spread and over the initial photon statistics.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "mazer/analytic_scattering.hpp"
#include "mazer/errors.hpp"
#include "mazer/photon_distribution.hpp"

namespace mazer {

/// Gaussian momentum distribution of the incident atom. The probability
/// density |psi(k)|^2 is normal with mean k0 and standard deviation width.
struct MomentumDistribution {
    double k0 = 0.1;
    double width = 0.0;

    [[nodiscard]] double density(double k) const {
        const double u = (k - k0) / width;
        return std::exp(-0.5 * u * u) / (width * std::sqrt(2.0 * std::numbers::pi));
    }
};

/// Momentum- and/or photon-averaged squared coefficients.
struct EnsembleResult {
    double r_e = 0.0, r_g = 0.0;  // |R_e|^2, |R_g|^2
    double t_e = 0.0, t_g = 0.0;  // |T_e|^2, |T_g|^2
    double truncated_mass = 0.0;  // |psi(k)|^2 mass discarded at k <= k_min
    std::vector<std::string> diagnostics;

    [[nodiscard]] double total() const { return r_e + r_g + t_e + t_g; }
    [[nodiscard]] double transmission() const { return t_e + t_g; }
    [[nodiscard]] double excited_population() const { return r_e + t_e; }

    static EnsembleResult from_bare(const BareCoefficients& b) {
        return {std::norm(b.r_e), std::norm(b.r_g), std::norm(b.t_e), std::norm(b.t_g), 0.0, {}};
    }

    EnsembleResult& operator+=(const EnsembleResult& o) {
        r_e += o.r_e;
        r_g += o.r_g;
        t_e += o.t_e;
        t_g += o.t_g;
        truncated_mass += o.truncated_mass;
        diagnostics.insert(diagnostics.end(), o.diagnostics.begin(), o.diagnostics.end());
        return *this;
    }
    friend EnsembleResult operator+(EnsembleResult a, const EnsembleResult& b) { return a += b; }
    friend EnsembleResult operator*(double w, EnsembleResult a) {
        a.r_e *= w;
        a.r_g *= w;
        a.t_e *= w;
        a.t_g *= w;
        a.truncated_mass *= w;
        return a;
    }
};

using CoefficientFunction = std::function<BareCoefficients(double)>;

struct QuadratureOptions {
    double k_min = 1e-6;      // lower momentum cut
    double half_width = 6.0;  // integration window in standard deviations
    int min_panels = 8;
    int max_panels = 4096;
};

namespace detail {

using gauss20 = boost::math::quadrature::gauss<double, 20>;

// Composite 20-point Gauss-Legendre over [a, b] with the given panel count.
// Accumulates density-weighted squared coefficients in a fixed order.
inline std::array<double, 5> weighted_panels(const CoefficientFunction& f, const MomentumDistribution& dist, double a,
                                             double b, int panels) {
    const auto& x = gauss20::abscissa();
    const auto& w = gauss20::weights();
    std::array<double, 5> acc{};  // r_e, r_g, t_e, t_g, mass
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        for (std::size_t j = 0; j < x.size(); ++j) {
            for (const double sgn : {-1.0, 1.0}) {
                const double k = mid + sgn * half * x[j];
                const double wk = half * w[j] * dist.density(k);
                const BareCoefficients c = f(k);
                acc[0] += wk * std::norm(c.r_e);
                acc[1] += wk * std::norm(c.r_g);
                acc[2] += wk * std::norm(c.t_e);
                acc[3] += wk * std::norm(c.t_g);
                acc[4] += wk;
            }
        }
    }
    return acc;
}

}  // namespace detail

/// Integrates |psi(k)|^2 |X(k)|^2 for each bare coefficient X. Negative and
/// near-zero momenta are cut at k_min and the distribution renormalized; a
/// diagnostic is attached when the discarded mass exceeds tol. Panels are
/// doubled until every averaged quantity changes by less than tol.
inline EnsembleResult momentum_average(const CoefficientFunction& coeff, const MomentumDistribution& dist,
                                       double tol = 1e-8, const QuadratureOptions& opt = {}) {
    if (!(dist.width >= 0.0) || !std::isfinite(dist.width))
        throw InvalidArgument("momentum_average: width must be >= 0");
    if (dist.width == 0.0) return EnsembleResult::from_bare(coeff(dist.k0));

    const double lo = dist.k0 - opt.half_width * dist.width;
    const double hi = dist.k0 + opt.half_width * dist.width;
    if (hi <= opt.k_min) throw InvalidArgument("momentum_average: distribution lies entirely at k <= 0");
    const double a = std::max(lo, opt.k_min);

    EnsembleResult out;
    if (a > lo) {
        out.truncated_mass = 0.5 * std::erfc(-(a - dist.k0) / (dist.width * std::sqrt(2.0)));
        if (out.truncated_mass > tol) {
            std::ostringstream os;
            os << "momentum_average: " << out.truncated_mass << " of the momentum distribution lies at k <= "
               << opt.k_min << "; truncated and renormalized";
            out.diagnostics.push_back(os.str());
        }
    }

    std::array<double, 5> prev{}, cur{};
    int panels = opt.min_panels;
    prev = detail::weighted_panels(coeff, dist, a, hi, panels);
    while (panels < opt.max_panels) {
        panels *= 2;
        cur = detail::weighted_panels(coeff, dist, a, hi, panels);
        double change = 0.0;
        for (int i = 0; i < 4; ++i) change = std::max(change, std::abs(cur[i] / cur[4] - prev[i] / prev[4]));
        prev = cur;
        if (change < tol) break;
    }
    const double mass = prev[4];
    out.r_e = prev[0] / mass;
    out.r_g = prev[1] / mass;
    out.t_e = prev[2] / mass;
    out.t_g = prev[3] / mass;
    return out;
}

/// Sum over n of w(n) * per_n(n).
template <class PerManifold>
auto photon_average(PerManifold&& per_n, const PhotonDistribution& dist) {
    using R = std::decay_t<decltype(per_n(0))>;
    R acc{};
    bool first = true;
    for (const auto& [n, w] : dist.weights) {
        if (first) {
            acc = w * per_n(n);
            first = false;
        } else {
            acc = acc + w * per_n(n);
        }
    }
    return acc;
}

/// Binary entropy of the averaged internal-state populations.
inline double ensemble_entropy(const EnsembleResult& res) {
    const double total = res.total();
    if (!(total > 0.0)) throw InvalidArgument("ensemble_entropy: empty ensemble");
    return binary_entropy(res.excited_population() / total);
}

}  // namespace mazer
