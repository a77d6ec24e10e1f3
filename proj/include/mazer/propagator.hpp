// propagator.hpp - split-operator wave-packet propagation of one excitation
// manifold, channels |n,e> and |n+1,g>, under
//   H = p^2/2 + (D/2) sigma_z + lambda(z) sqrt(n+1) sigma_x
//
// Each Strang step applies the exact pointwise 2x2 potential unitary for
// dt/2, the free evolution exp(-i k^2 dt/2) in momentum space, and another
// potential half step. Both factors are unitary, so the norm is conserved to
// rounding and a step with -dt inverts a step with +dt.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mazer/analytic_scattering.hpp"
#include "mazer/dressed_states.hpp"
#include "mazer/errors.hpp"
#include "mazer/mode_profile.hpp"
#include "mazer/spectral_transform.hpp"

namespace mazer {

/// Uniform periodic grid z_i = z_min + i dz, i = 0..points-1.
struct Grid1D {
    double z_min = -512.0;
    double z_max = 512.0;
    std::size_t points = 4096;

    [[nodiscard]] double dz() const { return (z_max - z_min) / static_cast<double>(points); }
    [[nodiscard]] double z(std::size_t i) const { return z_min + static_cast<double>(i) * dz(); }
    [[nodiscard]] double dk() const { return 2.0 * std::numbers::pi / (z_max - z_min); }
    /// Conjugate momentum of DFT bin i (standard FFT ordering).
    [[nodiscard]] double k(std::size_t i) const {
        const auto n = static_cast<std::ptrdiff_t>(points);
        auto j = static_cast<std::ptrdiff_t>(i);
        if (j >= n / 2) j -= n;
        return static_cast<double>(j) * dk();
    }
    [[nodiscard]] double k_nyquist() const { return std::numbers::pi / dz(); }

    static Grid1D symmetric(double half_width, std::size_t points) { return {-half_width, half_width, points}; }
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void validate(const Grid1D& g) {
    if (!(g.z_max > g.z_min) || !std::isfinite(g.z_min) || !std::isfinite(g.z_max))
        throw InvalidArgument("grid: z_max must exceed z_min");
    if (g.points < 2) throw InvalidArgument("grid: need at least two points");
}

enum class Channel { excited, ground };

/// Amplitudes (psi_e, psi_g) on a grid, stored back to back so both channels
/// transform in one batched call.
class TwoChannelWavePacket {
public:
    TwoChannelWavePacket(const Grid1D& grid, int manifold)
        : grid_(grid), manifold_(manifold), amp_(2 * grid.points, std::complex<double>{}) {
        validate(grid_);
        require_manifold(manifold);
    }

    [[nodiscard]] const Grid1D& grid() const { return grid_; }
    [[nodiscard]] int manifold() const { return manifold_; }
    [[nodiscard]] std::size_t size() const { return grid_.points; }

    std::span<std::complex<double>> excited() { return {amp_.data(), grid_.points}; }
    std::span<std::complex<double>> ground() { return {amp_.data() + grid_.points, grid_.points}; }
    [[nodiscard]] std::span<const std::complex<double>> excited() const { return {amp_.data(), grid_.points}; }
    [[nodiscard]] std::span<const std::complex<double>> ground() const {
        return {amp_.data() + grid_.points, grid_.points};
    }
    std::span<std::complex<double>> channel(Channel c) { return c == Channel::excited ? excited() : ground(); }

    std::complex<double>* data() { return amp_.data(); }
    [[nodiscard]] const std::complex<double>* data() const { return amp_.data(); }

private:
    Grid1D grid_;
    int manifold_;
    AlignedBuffer amp_;
};

// ---------------------------------------------------------------------------
// Packet measurements

/// Sum over grid points of f(i) * (|psi_e|^2 + |psi_g|^2) dz.
template <class Weight>
double weighted_mass(const TwoChannelWavePacket& p, Weight&& f) {
    const auto e = p.excited();
    const auto g = p.ground();
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += f(i) * (std::norm(e[i]) + std::norm(g[i]));
    return s * p.grid().dz();
}

inline double norm(const TwoChannelWavePacket& p) {
    return weighted_mass(p, [](std::size_t) { return 1.0; });
}

/// Mass at z > 0.
inline double mass_right(const TwoChannelWavePacket& p) {
    const auto& g = p.grid();
    return weighted_mass(p, [&](std::size_t i) { return g.z(i) > 0.0 ? 1.0 : 0.0; });
}

/// Mass at z <= 0.
inline double mass_left(const TwoChannelWavePacket& p) {
    const auto& g = p.grid();
    return weighted_mass(p, [&](std::size_t i) { return g.z(i) > 0.0 ? 0.0 : 1.0; });
}

inline double mean_position(const TwoChannelWavePacket& p) {
    const auto& g = p.grid();
    return weighted_mass(p, [&](std::size_t i) { return g.z(i); }) / norm(p);
}

/// Mass within `fraction` of the grid length from either edge.
inline double edge_mass(const TwoChannelWavePacket& p, double fraction = 0.05) {
    const auto& g = p.grid();
    const double band = fraction * (g.z_max - g.z_min);
    return weighted_mass(p, [&](std::size_t i) {
        const double z = g.z(i);
        return (z < g.z_min + band || z > g.z_max - band) ? 1.0 : 0.0;
    });
}

struct MomentumMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// First two momentum moments from the discrete spectrum.
inline MomentumMoments momentum_moments(const TwoChannelWavePacket& p) {
    TwoChannelWavePacket work = p;
    SpectralTransform fft(p.size(), 2);
    fft.forward(work.data());
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    const auto e = work.excited();
    const auto gr = work.ground();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double w = std::norm(e[i]) + std::norm(gr[i]);
        const double k = p.grid().k(i);
        m0 += w;
        m1 += w * k;
        m2 += w * k * k;
    }
    const double mean = m1 / m0;
    return {mean, m2 / m0 - mean * mean};
}

struct PacketObservables {
    double inversion;  // W = P_e - P_g
    double entropy;    // base-2 entanglement entropy
    double excited;    // P_e
    double ground;     // P_g
};

/// W, S and the channel populations. |n,e> and |n+1,g> differ in both the
/// atomic and the photon label, so the reduced field state is diagonal with
/// entries P_e, P_g and S is their binary entropy.
inline PacketObservables observables(const TwoChannelWavePacket& p) {
    const double dz = p.grid().dz();
    double pe = 0.0, pg = 0.0;
    for (const auto& a : p.excited()) pe += std::norm(a);
    for (const auto& a : p.ground()) pg += std::norm(a);
    pe *= dz;
    pg *= dz;
    const double total = pe + pg;
    return {pe - pg, total > 0.0 ? binary_entropy(pe / total) : 0.0, pe, pg};
}

/// Internal coherence integral of conj(psi_e) psi_g dz.
inline std::complex<double> internal_coherence(const TwoChannelWavePacket& p) {
    std::complex<double> s{};
    const auto e = p.excited();
    const auto g = p.ground();
    for (std::size_t i = 0; i < p.size(); ++i) s += std::conj(e[i]) * g[i];
    return s * p.grid().dz();
}

/// Length of the internal Bloch vector traced over the motion,
/// sqrt(W^2 + 4 |coherence|^2). W oscillates within +-envelope; dephasing
/// across the packet shrinks it below 1.
inline double rabi_envelope(const TwoChannelWavePacket& p) {
    const double w = observables(p).inversion;
    return std::sqrt(w * w + 4.0 * std::norm(internal_coherence(p)));
}

/// Fidelity |<a|b>|^2 between packets on the same grid.
inline double fidelity(const TwoChannelWavePacket& a, const TwoChannelWavePacket& b) {
    std::complex<double> s{};
    const std::size_t n = 2 * a.size();
    for (std::size_t i = 0; i < n; ++i) s += std::conj(a.data()[i]) * b.data()[i];
    s *= a.grid().dz();
    return std::norm(s);
}

// ---------------------------------------------------------------------------
// Initial state

/// Minimal-uncertainty Gaussian with position spread `width` and mean
/// momentum k0 in the requested channel, renormalized on the grid.
inline TwoChannelWavePacket init_packet(const Grid1D& grid, double z0, double width, double k0,
                                        Channel channel = Channel::excited, int manifold = 0,
                                        double tail_limit = 1e-10) {
    if (!(width > 0.0) || !std::isfinite(width)) throw InvalidArgument("init_packet: width must be > 0");
    if (!std::isfinite(z0) || !std::isfinite(k0)) throw InvalidArgument("init_packet: non-finite launch parameters");
    validate(grid);

    const double s = std::sqrt(2.0) * width;
    const double tail = 0.5 * std::erfc((z0 - grid.z_min) / s) + 0.5 * std::erfc((grid.z_max - z0) / s);
    if (tail > tail_limit) {
        std::ostringstream os;
        os << "init_packet: grid too small, " << tail << " of the packet lies outside [" << grid.z_min << ", "
           << grid.z_max << "]";
        throw GridError(os.str());
    }

    TwoChannelWavePacket p(grid, manifold);
    auto amp = p.channel(channel);
    const double prefactor = std::pow(2.0 * std::numbers::pi * width * width, -0.25);
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double z = grid.z(i);
        const double u = (z - z0) / width;
        amp[i] = prefactor * std::exp(-0.25 * u * u) * std::polar(1.0, k0 * z);
    }
    const double scale = 1.0 / std::sqrt(norm(p));
    for (auto& a : amp) a *= scale;
    return p;
}

// ---------------------------------------------------------------------------
// Stepping

/// Precomputed Strang propagator for fixed grid, time step, detuning,
/// profile and manifold.
class SplitOperatorStepper {
public:
    SplitOperatorStepper(const Grid1D& grid, double dt, double detuning, const ModeProfile& profile, int manifold = 0)
        : grid_(grid), dt_(dt), fft_(grid.points, 2) {
        validate(grid);
        validate(profile);
        require_manifold(manifold);
        if (!std::isfinite(dt)) throw InvalidArgument("stepper: dt must be finite");

        const std::size_t n = grid.points;
        half_ = make_potential(grid, 0.5 * dt, detuning, profile, manifold);
        full_ = make_potential(grid, dt, detuning, profile, manifold);
        kinetic_.resize(n);
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double k = grid.k(i);
            kinetic_[i] = std::polar(inv_n, -0.5 * k * k * dt);
        }
    }

    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] const Grid1D& grid() const { return grid_; }

    /// Applies `steps` Strang steps. Adjacent half potential steps are fused.
    void advance(TwoChannelWavePacket& p, std::size_t steps) const {
        if (steps == 0) return;
        check_grid(p);
        apply_potential(p, half_);
        for (std::size_t s = 0; s < steps; ++s) {
            apply_kinetic(p);
            apply_potential(p, s + 1 == steps ? half_ : full_);
        }
    }

    /// Forward transform of both channels, for tests of the spectral round trip.
    void to_momentum(TwoChannelWavePacket& p) const { fft_.forward(p.data()); }
    void to_position(TwoChannelWavePacket& p) const {
        fft_.backward(p.data());
        const double inv_n = 1.0 / static_cast<double>(grid_.points);
        for (std::size_t i = 0; i < 2 * grid_.points; ++i) p.data()[i] *= inv_n;
    }

private:
    // Symmetric 2x2 unitary [[a, b], [b, d]] per grid point.
    struct PotentialFactor {
        std::vector<std::complex<double>> a, b, d;
    };

    static PotentialFactor make_potential(const Grid1D& grid, double tau, double detuning, const ModeProfile& profile,
                                          int manifold) {
        const std::size_t n = grid.points;
        PotentialFactor f{std::vector<std::complex<double>>(n), std::vector<std::complex<double>>(n),
                          std::vector<std::complex<double>>(n)};
        const double root = std::sqrt(static_cast<double>(manifold + 1));
        const double half_det = 0.5 * detuning;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = eval_profile(profile, grid.z(i)) * root;
            const double w = std::hypot(half_det, g);
            if (w == 0.0) {
                f.a[i] = f.d[i] = 1.0;
                f.b[i] = 0.0;
                continue;
            }
            // exp(-i M tau) = cos(w tau) I - i sin(w tau) M / w
            const double c = std::cos(w * tau);
            const double s = std::sin(w * tau) / w;
            f.a[i] = {c, -s * half_det};
            f.d[i] = {c, s * half_det};
            f.b[i] = {0.0, -s * g};
        }
        return f;
    }

    // Plain complex product; std::complex operator* carries inf/nan recovery
    // that dominates these loops otherwise.
    static std::complex<double> mul(std::complex<double> x, std::complex<double> y) {
        return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
    }

    void apply_potential(TwoChannelWavePacket& p, const PotentialFactor& f) const {
        auto e = p.excited();
        auto g = p.ground();
        for (std::size_t i = 0; i < grid_.points; ++i) {
            const auto ei = e[i];
            const auto gi = g[i];
            e[i] = mul(f.a[i], ei) + mul(f.b[i], gi);
            g[i] = mul(f.b[i], ei) + mul(f.d[i], gi);
        }
    }

    void apply_kinetic(TwoChannelWavePacket& p) const {
        fft_.forward(p.data());
        auto e = p.excited();
        auto g = p.ground();
        for (std::size_t i = 0; i < grid_.points; ++i) {
            e[i] = mul(e[i], kinetic_[i]);
            g[i] = mul(g[i], kinetic_[i]);
        }
        fft_.backward(p.data());
    }

    void check_grid(const TwoChannelWavePacket& p) const {
        const auto& g = p.grid();
        if (g.points != grid_.points || g.z_min != grid_.z_min || g.z_max != grid_.z_max)
            throw InvalidArgument("stepper: packet lives on a different grid");
    }

    Grid1D grid_;
    double dt_;
    SpectralTransform fft_;
    PotentialFactor half_, full_;
    std::vector<std::complex<double>> kinetic_;
};

/// One Strang step of the packet's own manifold.
inline void step(TwoChannelWavePacket& p, double dt, double detuning, const ModeProfile& profile) {
    SplitOperatorStepper(p.grid(), dt, detuning, profile, p.manifold()).advance(p, 1);
}

// ---------------------------------------------------------------------------
// Runs

/// Decides when the packet has left the interaction region for good.
struct TerminationCriteria {
    double region_threshold = 1e-6;  // region: lambda(z) > threshold * peak
    double region_mass = 1e-6;       // mass allowed inside the region
    double rate = 1e-8;              // allowed |dP_right/dt|
};

struct PropagationConfig {
    Grid1D grid;
    double dt = 0.05;
    double t_max = 0.0;
    std::size_t snapshot_stride = 100;  // steps between samples
    double z0 = -100.0;
    double width = 10.0;  // position standard deviation of the launch packet
    double k0 = 0.1;
    double detuning = 0.0;
    ModeProfile profile = GaussianProfile{};
    int manifold = 0;
    Channel launch = Channel::excited;
    TerminationCriteria termination;
    bool stop_when_converged = true;
    bool record_snapshots = false;
    double edge_fraction = 0.05;
    double edge_mass_limit = 1e-6;
};

struct TimeSample {
    double t;
    double inversion;
    double entropy;
    double norm;
    double p_right;
    double p_left;
    double envelope;  // rabi_envelope
};

/// Channel densities |psi_e|^2, |psi_g|^2 at one instant.
struct Snapshot {
    double t;
    std::vector<double> excited;
    std::vector<double> ground;
};

struct PropagationResult {
    TwoChannelWavePacket initial;
    TwoChannelWavePacket final;
    std::vector<TimeSample> series;
    std::vector<Snapshot> snapshots;
    bool converged = false;
    double t_converged = 0.0;
    double t_end = 0.0;
    std::size_t steps = 0;
};

inline TimeSample sample(const TwoChannelWavePacket& p, double t) {
    const auto obs = observables(p);
    const double right = mass_right(p);
    const double left = mass_left(p);
    return {t, obs.inversion, obs.entropy, right + left, right, left, rabi_envelope(p)};
}

inline Snapshot snapshot(const TwoChannelWavePacket& p, double t) {
    Snapshot s{t, std::vector<double>(p.size()), std::vector<double>(p.size())};
    for (std::size_t i = 0; i < p.size(); ++i) {
        s.excited[i] = std::norm(p.excited()[i]);
        s.ground[i] = std::norm(p.ground()[i]);
    }
    return s;
}

/// Mass inside {z : lambda(z) > threshold * peak}.
inline double region_mass(const TwoChannelWavePacket& p, const ModeProfile& profile, double threshold) {
    const double cut = threshold * peak_coupling(profile);
    const auto& g = p.grid();
    return weighted_mass(p, [&](std::size_t i) { return eval_profile(profile, g.z(i)) > cut ? 1.0 : 0.0; });
}

/// Invariant checks for a configuration, one message per violation.
inline std::vector<std::string> diagnose(const PropagationConfig& c) {
    std::vector<std::string> out;
    auto add = [&](const std::ostringstream& os) { out.push_back(os.str()); };
    const auto& g = c.grid;
    const double dz = g.dz();
    const double lambda_peak = peak_coupling(c.profile) * std::sqrt(static_cast<double>(c.manifold + 1));
    const double omega_max = std::hypot(0.5 * c.detuning, lambda_peak);
    const double k_fast = std::abs(c.k0) + 6.0 / (2.0 * c.width);
    const double k_max = std::sqrt(k_fast * k_fast + 2.0 * omega_max);

    if (!is_power_of_two(g.points) || g.points < 1024) {
        std::ostringstream os;
        os << "grid: " << g.points << " points; need a power of two >= 1024";
        add(os);
    }
    if (dz > 2.0 * std::numbers::pi / (8.0 * k_max)) {
        std::ostringstream os;
        os << "grid: dz = " << dz << " does not resolve momentum " << k_max << " (need dz <= "
           << 2.0 * std::numbers::pi / (8.0 * k_max) << ")";
        add(os);
    }
    if (dz > length_scale(c.profile) / 16.0) {
        std::ostringstream os;
        os << "grid: dz = " << dz << " does not resolve the profile (need dz <= " << length_scale(c.profile) / 16.0
           << ")";
        add(os);
    }
    if (std::abs(c.dt) * omega_max > 0.05) {
        std::ostringstream os;
        os << "stability: dt * max omega = " << std::abs(c.dt) * omega_max << " > 0.05; suggested dt <= "
           << 0.05 / omega_max;
        add(os);
    }
    if (0.5 * std::abs(c.dt) * k_max * k_max > 0.5) {
        std::ostringstream os;
        os << "stability: dt * k_max^2 / 2 = " << 0.5 * std::abs(c.dt) * k_max * k_max
           << " > 0.5; suggested dt <= " << 1.0 / (k_max * k_max);
        add(os);
    }
    const double peak = peak_coupling(c.profile);
    if (peak > 0.0 && eval_profile(c.profile, c.z0) / peak >= 1e-8) {
        std::ostringstream os;
        os << "placement: lambda(z0)/lambda0 = " << eval_profile(c.profile, c.z0) / peak << " >= 1e-8";
        add(os);
    }
    if (!(c.width < std::abs(c.z0) / 3.0)) {
        std::ostringstream os;
        os << "placement: packet width " << c.width << " is not below |z0|/3 = " << std::abs(c.z0) / 3.0;
        add(os);
    }
    if (c.z0 - 6.0 * c.width < g.z_min || c.z0 + 6.0 * c.width > g.z_max) {
        std::ostringstream os;
        os << "placement: launch packet within 6 widths of the grid edge";
        add(os);
    }
    return out;
}

/// Evolves the launch packet until t_max, or until the scattering has
/// settled when stop_when_converged is set. Samples are recorded every
/// snapshot_stride steps and at the end. Throws BoundaryContamination when
/// more than edge_mass_limit reaches the outer edge band of the grid.
inline PropagationResult propagate(const PropagationConfig& c) {
    validate(c.grid);
    validate(c.profile);
    if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw InvalidArgument("propagate: dt must be > 0");
    if (!(c.t_max >= 0.0) || !std::isfinite(c.t_max)) throw InvalidArgument("propagate: t_max must be >= 0");
    if (c.snapshot_stride == 0) throw InvalidArgument("propagate: snapshot_stride must be >= 1");

    PropagationResult r{init_packet(c.grid, c.z0, c.width, c.k0, c.launch, c.manifold),
                        TwoChannelWavePacket(c.grid, c.manifold), {}, {}};
    r.final = r.initial;
    r.series.push_back(sample(r.final, 0.0));
    if (c.record_snapshots) r.snapshots.push_back(snapshot(r.final, 0.0));

    const auto total_steps = static_cast<std::size_t>(std::llround(c.t_max / c.dt));
    if (total_steps == 0) return r;

    const SplitOperatorStepper stepper(c.grid, c.dt, c.detuning, c.profile, c.manifold);
    const bool has_region = peak_coupling(c.profile) > 0.0;
    // The predicate is armed once the launch centre would have reached the
    // near edge of the coupling region.
    const double region_edge = has_region ? support(c.profile, c.termination.region_threshold).first : 0.0;
    const double t_armed = (c.k0 > 0.0 && region_edge > c.z0) ? (region_edge - c.z0) / c.k0 : 0.0;

    std::size_t done = 0;
    while (done < total_steps) {
        const std::size_t chunk = std::min(c.snapshot_stride, total_steps - done);
        stepper.advance(r.final, chunk);
        done += chunk;
        const double t = static_cast<double>(done) * c.dt;
        const TimeSample prev = r.series.back();
        r.series.push_back(sample(r.final, t));
        if (c.record_snapshots) r.snapshots.push_back(snapshot(r.final, t));

        const double edge = edge_mass(r.final, c.edge_fraction);
        if (edge > c.edge_mass_limit) {
            std::ostringstream os;
            os << "propagate: boundary contamination at t = " << t << " (edge mass " << edge << " > "
               << c.edge_mass_limit << "); enlarge the grid or shorten t_max";
            throw BoundaryContamination(os.str());
        }

        if (!r.converged && t >= t_armed) {
            const double inside =
                has_region ? region_mass(r.final, c.profile, c.termination.region_threshold) : 0.0;
            const double rate = std::abs(r.series.back().p_right - prev.p_right) / (t - prev.t);
            if (inside < c.termination.region_mass && rate < c.termination.rate) {
                r.converged = true;
                r.t_converged = t;
                if (c.stop_when_converged) break;
            }
        }
    }
    r.t_end = static_cast<double>(done) * c.dt;
    r.steps = done;
    return r;
}

/// Asymptotic transmission probability: mass at z > 0 once the run settled.
inline double transmission_from_packet(const PropagationResult& r) {
    if (!r.converged) {
        std::ostringstream os;
        os << "transmission_from_packet: scattering not settled by t = " << r.t_end;
        throw NotConverged(os.str());
    }
    return mass_right(r.final);
}

inline double transmission_from_packet(const TwoChannelWavePacket& p) { return mass_right(p); }

/// Phase spread [lambda(0) - lambda(-dz)] L / (2 k0) accumulated across a
/// packet of width dz entering a smooth profile of waist L. Values of order
/// pi signal a collapse of the Rabi oscillations during entry.
inline double collapse_time_estimate(const ModeProfile& profile, double width, double k0) {
    double waist = 0.0;
    if (const auto* g = std::get_if<GaussianProfile>(&profile))
        waist = g->waist;
    else if (const auto* s = std::get_if<SechProfile>(&profile))
        waist = s->waist;
    else
        throw InvalidArgument("collapse_time_estimate: needs a gaussian or sech profile");
    if (!(width >= 0.0) || !(width < waist)) throw InvalidArgument("collapse_time_estimate: requires 0 <= width < L");
    if (!(k0 > 0.0)) throw InvalidArgument("collapse_time_estimate: k0 must be > 0");
    return (eval_profile(profile, 0.0) - eval_profile(profile, -width)) * waist / (2.0 * k0);
}

// ---------------------------------------------------------------------------
// Automatic setup of a scattering run

/// Launch, profile and resolution requests; unset fields are derived so the
/// resulting configuration satisfies every check in diagnose().
struct ScatteringSetup {
    ModeProfile profile = GaussianProfile{};
    double k0 = 0.1;
    double width = 15.0;
    double detuning = 0.0;
    int manifold = 0;
    std::optional<double> z0;
    std::optional<double> t_max;
    std::optional<double> dt;
    std::optional<double> half_width;
    std::optional<std::size_t> points;
    double travel_factor = 3.0;   // t_max = travel_factor * (|z0| + reach) / k0
    std::size_t samples = 500;    // approximate number of time samples
    TerminationCriteria termination;
};

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline PropagationConfig plan_propagation(const ScatteringSetup& s) {
    validate(s.profile);
    if (!(s.width > 0.0)) throw InvalidArgument("plan_propagation: width must be > 0");
    if (!(s.k0 > 0.0)) throw InvalidArgument("plan_propagation: k0 must be > 0");

    PropagationConfig c;
    c.profile = s.profile;
    c.k0 = s.k0;
    c.width = s.width;
    c.detuning = s.detuning;
    c.manifold = s.manifold;
    c.termination = s.termination;

    const double sigma_k = 1.0 / (2.0 * s.width);
    const double lambda_peak = peak_coupling(s.profile) * std::sqrt(static_cast<double>(s.manifold + 1));
    const double omega_max = std::hypot(0.5 * s.detuning, lambda_peak);
    const double k_fast = s.k0 + 6.0 * sigma_k;
    const double k_max = std::sqrt(k_fast * k_fast + 2.0 * omega_max);
    const auto [lo, hi] = support(s.profile, 1e-8);

    c.z0 = s.z0.value_or(std::min(lo, 0.0) - 5.0 * s.width);
    const double reach = std::max(hi, 0.0);
    c.t_max = s.t_max.value_or(s.travel_factor * (std::abs(c.z0) + reach) / s.k0);

    // Transmitted and reflected fronts after t_max, plus launch clearance. A
    // change of internal state exchanges |D| of energy with the motion.
    const double k_front = std::sqrt(std::pow(s.k0 + 5.0 * sigma_k, 2) + 2.0 * std::abs(s.detuning));
    const double front = k_front * c.t_max;
    const double extent =
        std::max({std::abs(c.z0) + 6.0 * s.width, front - std::abs(c.z0) + reach, reach + 6.0 * s.width}) +
        6.0 * s.width;
    const double half = s.half_width.value_or(extent / (1.0 - 2.0 * c.edge_fraction));

    const double dz_max = std::min(2.0 * std::numbers::pi / (8.0 * k_max), length_scale(s.profile) / 16.0);
    const std::size_t points =
        s.points.value_or(next_power_of_two(std::max<std::size_t>(1024, static_cast<std::size_t>(std::ceil(2.0 * half / dz_max)))));
    c.grid = Grid1D::symmetric(half, points);

    double dt = std::min(1.0 / (k_max * k_max), omega_max > 0.0 ? 0.05 / omega_max : 1.0);
    // The splitting error of a discontinuous coupling leaks into high momenta
    // that outrun the planned fronts; it falls roughly as dt^3, and a sixteenth
    // step keeps it well below the edge limit.
    if (std::holds_alternative<MezaProfile>(s.profile)) dt /= 16.0;
    if (s.dt) dt = *s.dt;
    // land exactly on t_max
    const double steps = std::max(1.0, std::ceil(c.t_max / dt));
    c.dt = s.dt ? dt : c.t_max / steps;
    if (c.t_max == 0.0) c.dt = dt;
    c.snapshot_stride = std::max<std::size_t>(1, static_cast<std::size_t>(steps) / std::max<std::size_t>(1, s.samples));
    return c;
}

}  // namespace mazer
