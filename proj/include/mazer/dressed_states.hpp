// dressed_states.hpp - geometry of the 2x2 excitation-manifold blocks
//
// Within manifold n the bare states |n,e> and |n+1,g> are coupled by
// lambda(z) sqrt(n+1) and split by the detuning. Diagonalizing the internal
// part position by position gives the dressed states and the adiabatic
// potentials V+-(z).

#pragma once

#include <cmath>
#include <numbers>

#include "mazer/errors.hpp"
#include "mazer/mode_profile.hpp"

namespace mazer {

/// One excitation manifold of the Jaynes-Cummings ladder.
struct ManifoldParams {
    int n = 0;               // photons in the |n,e> member
    double detuning = 0.0;   // atomic minus field frequency
    ModeProfile profile = GaussianProfile{};

    /// lambda(z) sqrt(n+1)
    [[nodiscard]] double coupling(double z) const {
        return eval_profile(profile, z) * std::sqrt(static_cast<double>(n + 1));
    }
};

inline void require_manifold(int n) {
    if (n < 0) throw InvalidArgument("photon number must be non-negative");
}

/// Half the dressed splitting, sqrt((D/2)^2 + lambda^2 (n+1)).
inline double local_frequency(double coupling, int n, double detuning) {
    require_manifold(n);
    const double g = coupling * std::sqrt(static_cast<double>(n + 1));
    return std::hypot(0.5 * detuning, g);
}

/// Mixing angle theta with tan(2 theta) = 2 lambda sqrt(n+1) / D.
///
/// theta lies in [0, pi/2): 0 for dominant positive detuning, pi/4 on
/// resonance. A negative detuning with vanishing coupling gives pi/2 (the
/// upper dressed state is then |n+1,g>).
inline double mixing_angle(double coupling, int n, double detuning) {
    require_manifold(n);
    if (coupling < 0.0 || !std::isfinite(coupling) || !std::isfinite(detuning))
        throw InvalidArgument("mixing_angle: coupling must be finite and >= 0");
    if (coupling == 0.0 && detuning == 0.0)
        throw DegenerateInput("mixing_angle: dressed basis undefined for zero coupling and zero detuning");
    const double g = coupling * std::sqrt(static_cast<double>(n + 1));
    return 0.5 * std::atan2(2.0 * g, detuning);
}

struct AdiabaticPair {
    double upper;  // V+ >= |D/2|
    double lower;  // V- = -V+
};

inline AdiabaticPair adiabatic_potentials(const ModeProfile& profile, int n, double detuning, double z) {
    const double w = local_frequency(eval_profile(profile, z), n, detuning);
    return {w, -w};
}

}  // namespace mazer
