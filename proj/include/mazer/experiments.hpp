// experiments.hpp - figure-level data generation
//
// Each experiment is a parameter sweep producing one ResultTable. Sweep points
// are dispatched to a worker pool (MAZER_WORKERS, default: hardware threads)
// and reassembled by index, so the table does not depend on scheduling.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "mazer/analytic_scattering.hpp"
#include "mazer/csv.hpp"
#include "mazer/ensemble.hpp"
#include "mazer/errors.hpp"
#include "mazer/mode_profile.hpp"
#include "mazer/photon_distribution.hpp"
#include "mazer/propagator.hpp"
#include "mazer/version.hpp"

namespace mazer {

enum class ExperimentId { fig1, fig2, fig3a, fig3b, fig4, fig5, fig6, fig7, fig8, custom };

inline const std::vector<std::pair<ExperimentId, std::string_view>>& experiment_names() {
    static const std::vector<std::pair<ExperimentId, std::string_view>> names = {
        {ExperimentId::fig1, "fig1"},   {ExperimentId::fig2, "fig2"}, {ExperimentId::fig3a, "fig3a"},
        {ExperimentId::fig3b, "fig3b"}, {ExperimentId::fig4, "fig4"}, {ExperimentId::fig5, "fig5"},
        {ExperimentId::fig6, "fig6"},   {ExperimentId::fig7, "fig7"}, {ExperimentId::fig8, "fig8"},
        {ExperimentId::custom, "custom"},
    };
    return names;
}

inline std::string_view to_string(ExperimentId id) {
    for (const auto& [k, v] : experiment_names())
        if (k == id) return v;
    return "?";
}

inline ExperimentId parse_experiment_id(std::string_view s) {
    for (const auto& [k, v] : experiment_names())
        if (v == s) return k;
    throw ConfigError("unknown experiment '" + std::string(s) + "'");
}

/// Fully resolved experiment parameters. Unset optionals are derived
/// automatically per run (see plan_propagation).
struct ExperimentConfig {
    ExperimentId id = ExperimentId::custom;
    std::string profile = "meza";      // meza | sech | gaussian
    std::string solver = "analytic";   // analytic | propagator
    std::string sweep = "k0";          // k0 | L | snapshot | time
    double lambda0 = 1.0;
    double length = 50.0;  // L when L is not swept
    double k0 = 0.1;       // k0 when k0 is not swept
    double sweep_min = 0.02;
    double sweep_max = 3.0;
    int points = 150;
    bool open_left = true;  // (min, max] rather than [min, max]
    std::vector<double> dk_fractions{0.0};  // momentum width as a fraction of k0
    std::vector<double> detunings{0.0};
    std::string photon = "vacuum";          // vacuum | coherent | thermal
    std::vector<double> n0_values{0.0};
    double photon_truncation = default_photon_truncation;
    double quad_tol = 1e-8;

    // propagation
    double delta_z = 15.0;  // packet width
    std::optional<double> dt, t_max, z0, grid_half_width;
    std::optional<std::size_t> grid_points;
    double travel_factor = 3.0;
    double region_mass = 1e-3;
    double rate_tol = 3e-6;
    int convergence_retries = 1;  // reruns with a doubled horizon before giving up
    std::vector<double> snapshot_lengths;  // fig7
    double t_snapshot = 3000.0;
};

/// Figure experiment defaults.
inline ExperimentConfig default_config(ExperimentId id) {
    ExperimentConfig c;
    c.id = id;
    switch (id) {
        case ExperimentId::fig1:
        case ExperimentId::fig4:
            c.profile = id == ExperimentId::fig1 ? "meza" : "sech";
            c.length = id == ExperimentId::fig1 ? 50.0 : 5.0;
            c.sweep = "k0";
            c.sweep_min = 0.02;
            c.sweep_max = 3.0;
            c.points = 150;
            c.dk_fractions = {0.0, 0.02, 0.1};
            break;
        case ExperimentId::fig2:
        case ExperimentId::fig5:
            c.profile = id == ExperimentId::fig2 ? "meza" : "sech";
            c.k0 = 0.1;
            c.sweep = "L";
            c.sweep_min = 0.2;
            c.sweep_max = 20.0;
            c.points = 200;
            c.dk_fractions = {0.0, 0.5};
            break;
        case ExperimentId::fig3a:
        case ExperimentId::fig3b:
            c.profile = "meza";
            c.k0 = 0.1;
            c.sweep = "L";
            c.sweep_min = 0.2;
            c.sweep_max = 20.0;
            c.points = 200;
            c.dk_fractions = {0.0};
            c.photon = id == ExperimentId::fig3a ? "coherent" : "thermal";
            c.n0_values = {0.0, 0.2, 1.0};
            break;
        case ExperimentId::fig6:
            c.profile = "gaussian";
            c.solver = "propagator";
            c.k0 = 0.1;
            c.delta_z = 15.0;
            c.sweep = "L";
            c.sweep_min = 0.5;
            c.sweep_max = 6.0;
            c.points = 40;
            c.open_left = false;
            c.detunings = {0.0, 0.02, 0.1};
            break;
        case ExperimentId::fig7:
            c.profile = "gaussian";
            c.solver = "propagator";
            c.k0 = 0.1;
            c.delta_z = 15.0;
            c.sweep = "snapshot";
            c.snapshot_lengths = {2.1245, 1.8108};
            c.t_snapshot = 3000.0;
            break;
        case ExperimentId::fig8:
            c.profile = "gaussian";
            c.solver = "propagator";
            c.length = 10.0;
            c.k0 = 6.0;
            c.delta_z = 10.0;
            c.sweep = "time";
            break;
        case ExperimentId::custom:
            break;
    }
    return c;
}

// ---------------------------------------------------------------------------
// JSON round trip

namespace detail {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["experiment"] = std::string(to_string(c.id));
    j["profile"] = c.profile;
    j["solver"] = c.solver;
    j["sweep"] = c.sweep;
    j["lambda0"] = c.lambda0;
    j["L"] = c.length;
    j["k0"] = c.k0;
    j["sweep_min"] = c.sweep_min;
    j["sweep_max"] = c.sweep_max;
    j["points"] = c.points;
    j["open_left"] = c.open_left;
    j["dk_fractions"] = c.dk_fractions;
    j["detunings"] = c.detunings;
    j["photon"] = c.photon;
    j["n0_values"] = c.n0_values;
    j["photon_truncation"] = c.photon_truncation;
    j["quad_tol"] = c.quad_tol;
    j["delta_z"] = c.delta_z;
    j["dt"] = detail::opt_json(c.dt);
    j["t_max"] = detail::opt_json(c.t_max);
    j["z0"] = detail::opt_json(c.z0);
    j["grid_half_width"] = detail::opt_json(c.grid_half_width);
    j["grid_points"] = detail::opt_json(c.grid_points);
    j["travel_factor"] = c.travel_factor;
    j["region_mass"] = c.region_mass;
    j["rate_tol"] = c.rate_tol;
    j["convergence_retries"] = c.convergence_retries;
    j["snapshot_lengths"] = c.snapshot_lengths;
    j["t_snapshot"] = c.t_snapshot;
    return j;
}

/// Applies one override. Unknown keys and ill-typed values throw ConfigError.
inline void apply_override(ExperimentConfig& c, const std::string& key, const nlohmann::json& v) {
    try {
        auto opt_double = [&](std::optional<double>& field) {
            if (v.is_null()) field.reset();
            else field = v.get<double>();
        };
        if (key == "experiment") {
            if (parse_experiment_id(v.get<std::string>()) != c.id)
                throw ConfigError("config names experiment '" + v.get<std::string>() + "' but '" +
                                  std::string(to_string(c.id)) + "' was requested");
        } else if (key == "profile") c.profile = v.get<std::string>();
        else if (key == "solver") c.solver = v.get<std::string>();
        else if (key == "sweep") c.sweep = v.get<std::string>();
        else if (key == "lambda0") c.lambda0 = v.get<double>();
        else if (key == "L") c.length = v.get<double>();
        else if (key == "k0") c.k0 = v.get<double>();
        else if (key == "sweep_min") c.sweep_min = v.get<double>();
        else if (key == "sweep_max") c.sweep_max = v.get<double>();
        else if (key == "points") c.points = v.get<int>();
        else if (key == "open_left") c.open_left = v.get<bool>();
        else if (key == "dk_fractions") c.dk_fractions = v.get<std::vector<double>>();
        else if (key == "detunings") c.detunings = v.get<std::vector<double>>();
        else if (key == "detuning") c.detunings = {v.get<double>()};
        else if (key == "photon") c.photon = v.get<std::string>();
        else if (key == "n0_values") c.n0_values = v.get<std::vector<double>>();
        else if (key == "photon_truncation") c.photon_truncation = v.get<double>();
        else if (key == "quad_tol") c.quad_tol = v.get<double>();
        else if (key == "delta_z") c.delta_z = v.get<double>();
        else if (key == "dt") opt_double(c.dt);
        else if (key == "t_max") opt_double(c.t_max);
        else if (key == "z0") opt_double(c.z0);
        else if (key == "grid_half_width") opt_double(c.grid_half_width);
        else if (key == "grid_points") {
            if (v.is_null()) c.grid_points.reset();
            else c.grid_points = v.get<std::size_t>();
        } else if (key == "travel_factor") c.travel_factor = v.get<double>();
        else if (key == "region_mass") c.region_mass = v.get<double>();
        else if (key == "rate_tol") c.rate_tol = v.get<double>();
        else if (key == "convergence_retries") c.convergence_retries = v.get<int>();
        else if (key == "snapshot_lengths") c.snapshot_lengths = v.get<std::vector<double>>();
        else if (key == "t_snapshot") c.t_snapshot = v.get<double>();
        else throw ConfigError("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad value for '" + key + "': " + e.what());
    }
}

inline void apply_overrides(ExperimentConfig& c, const nlohmann::json& obj) {
    if (!obj.is_object()) throw ConfigError("experiment configuration must be a JSON object");
    for (const auto& [key, value] : obj.items()) apply_override(c, key, value);
}

/// Parses "key=value"; the value is read as JSON when possible, else as a string.
inline void apply_assignment(ExperimentConfig& c, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    nlohmann::json v = nlohmann::json::parse(text, nullptr, false);
    if (v.is_discarded()) v = text;
    apply_override(c, key, v);
}

// ---------------------------------------------------------------------------
// Worker pool

inline unsigned worker_count() {
    if (const char* env = std::getenv("MAZER_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct TaskOutcome {
    std::exception_ptr error;
};

/// Runs fn(i) for i in [0, count) on a pool. Returns the per-index error
/// state; successful results are written by fn itself into caller storage.
inline std::vector<TaskOutcome> run_indexed(std::size_t count, const std::function<void(std::size_t)>& fn,
                                            unsigned workers = worker_count()) {
    std::vector<TaskOutcome> out(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                out[i].error = std::current_exception();
            }
        }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (n <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

// ---------------------------------------------------------------------------
// Running

/// A sweep point failed; `partial` holds every complete row before it.
class ExperimentFailure : public std::runtime_error {
public:
    ExperimentFailure(const std::string& what, ResultTable partial, bool convergence)
        : std::runtime_error(what), partial(std::move(partial)), convergence(convergence) {}
    ResultTable partial;
    bool convergence;  // true for convergence/grid failures of the propagator
};

inline std::vector<double> sweep_values(const ExperimentConfig& c) {
    if (c.points < 1) throw ConfigError("points must be >= 1");
    std::vector<double> v;
    const double span = c.sweep_max - c.sweep_min;
    for (int i = 0; i < c.points; ++i) {
        if (c.open_left) v.push_back(c.sweep_min + span * (i + 1) / c.points);
        else v.push_back(c.points == 1 ? c.sweep_min : c.sweep_min + span * i / (c.points - 1));
    }
    return v;
}

/// Scattering setup for one propagator run of the given experiment.
inline ScatteringSetup propagation_setup(const ExperimentConfig& c, double length, double k0, double detuning,
                                         int manifold = 0) {
    ScatteringSetup s;
    s.profile = make_profile(c.profile, c.lambda0, length);
    s.k0 = k0;
    s.width = c.delta_z;
    s.detuning = detuning;
    s.manifold = manifold;
    s.z0 = c.z0;
    s.t_max = c.t_max;
    s.dt = c.dt;
    s.half_width = c.grid_half_width;
    s.points = c.grid_points;
    s.travel_factor = c.travel_factor;
    s.termination.region_mass = c.region_mass;
    s.termination.rate = c.rate_tol;
    return s;
}

namespace detail {

inline std::string label_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

struct Curve {
    double dk_fraction = 0.0;
    double detuning = 0.0;
    double n0 = 0.0;
    std::string label;
};

inline std::vector<Curve> curves(const ExperimentConfig& c) {
    std::vector<Curve> out;
    const bool with_photons = c.photon != "vacuum";
    if (c.solver == "propagator") {
        for (double d : c.detunings)
            for (double n0 : with_photons ? c.n0_values : std::vector<double>{0.0}) {
                std::string label = "D=" + label_number(d);
                if (with_photons) label += "_" + c.photon + "_n0=" + label_number(n0);
                out.push_back({0.0, d, n0, label});
            }
        return out;
    }
    for (double n0 : with_photons ? c.n0_values : std::vector<double>{0.0})
        for (double f : c.dk_fractions) {
            std::string label;
            if (with_photons) label = c.photon + "_n0=" + label_number(n0);
            if (c.dk_fractions.size() > 1 || f != 0.0 || !with_photons)
                label += (label.empty() ? "" : "_") + std::string("dk=") + label_number(f) + "k0";
            out.push_back({f, 0.0, n0, label});
        }
    return out;
}

inline PhotonDistribution photons_for(const ExperimentConfig& c, double n0) {
    return photon_weights(parse_photon_kind(c.photon), n0, c.photon_truncation);
}

struct PointValue {
    double p_trans = 0.0;
    double entropy = 0.0;
    std::size_t diagnostics = 0;
};

inline PointValue analytic_point(const ExperimentConfig& c, double length, double k0, const Curve& curve) {
    const ModeProfile profile = make_profile(c.profile, c.lambda0, length);
    const MomentumDistribution dist{k0, curve.dk_fraction * k0};
    const auto photons = photons_for(c, curve.n0);
    const EnsembleResult res = photon_average(
        [&](int n) {
            return momentum_average([&](double k) { return analytic_bare(profile, k, n); }, dist, c.quad_tol);
        },
        photons);
    return {res.transmission(), ensemble_entropy(res), res.diagnostics.size()};
}

inline PointValue propagator_point(const ExperimentConfig& c, double length, double k0, const Curve& curve) {
    const auto photons = photons_for(c, curve.n0);
    double p_trans = 0.0, p_excited = 0.0;
    for (const auto& [n, w] : photons.weights) {
        ScatteringSetup setup = propagation_setup(c, length, k0, curve.detuning, n);
        PropagationResult r = propagate(plan_propagation(setup));
        for (int retry = 0; !r.converged && retry < c.convergence_retries && !c.t_max; ++retry) {
            setup.travel_factor *= 2.0;
            r = propagate(plan_propagation(setup));
        }
        p_trans += w * transmission_from_packet(r);
        p_excited += w * observables(r.final).excited;
    }
    return {p_trans, binary_entropy(p_excited), 0};
}

inline bool is_convergence_error(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const NotConverged&) {
        return true;
    } catch (const GridError&) {
        return true;
    } catch (...) {
        return false;
    }
}

inline std::string what_of(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const std::exception& ex) {
        return ex.what();
    } catch (...) {
        return "unknown error";
    }
}

inline ResultTable sweep_table(const ExperimentConfig& c) {
    const auto values = sweep_values(c);
    const auto cs = curves(c);
    const bool propagator = c.solver == "propagator";
    if (!propagator && c.solver != "analytic") throw ConfigError("solver must be 'analytic' or 'propagator'");
    if (c.sweep != "k0" && c.sweep != "L") throw ConfigError("sweep must be 'k0' or 'L' for this experiment");

    ResultTable t;
    t.columns.push_back(c.sweep);
    for (const auto& cv : cs) {
        t.columns.push_back("P_trans_" + cv.label);
        t.columns.push_back("S_" + cv.label);
    }

    // Propagator runs are parallelized per (point, curve), closed forms per point.
    const std::size_t per_task = propagator ? 1 : cs.size();
    const std::size_t tasks = values.size() * (propagator ? cs.size() : 1);
    std::vector<PointValue> results(values.size() * cs.size());
    auto outcomes = run_indexed(tasks, [&](std::size_t task) {
        const std::size_t point = propagator ? task / cs.size() : task;
        const double x = values[point];
        const double length = c.sweep == "L" ? x : c.length;
        const double k0 = c.sweep == "k0" ? x : c.k0;
        for (std::size_t j = 0; j < per_task; ++j) {
            const std::size_t curve = propagator ? task % cs.size() : j;
            results[point * cs.size() + curve] =
                propagator ? propagator_point(c, length, k0, cs[curve]) : analytic_point(c, length, k0, cs[curve]);
        }
    });

    std::size_t diagnostics = 0;
    for (std::size_t point = 0; point < values.size(); ++point) {
        for (std::size_t j = 0; j < (propagator ? cs.size() : 1); ++j) {
            const auto& err = outcomes[propagator ? point * cs.size() + j : point].error;
            if (err) {
                std::ostringstream os;
                os << to_string(c.id) << ": sweep point " << point << " (" << c.sweep << " = " << values[point]
                   << ") failed: " << what_of(err);
                throw ExperimentFailure(os.str(), std::move(t), is_convergence_error(err));
            }
        }
        std::vector<double> row{values[point]};
        for (std::size_t j = 0; j < cs.size(); ++j) {
            const auto& v = results[point * cs.size() + j];
            row.push_back(v.p_trans);
            row.push_back(v.entropy);
            diagnostics += v.diagnostics;
        }
        t.add_row(std::move(row));
    }
    if (diagnostics > 0)
        t.metadata.push_back("diagnostics: " + std::to_string(diagnostics) +
                             " sweep evaluations truncated a non-negligible k <= 0 momentum tail");
    return t;
}

inline ResultTable snapshot_experiment(const ExperimentConfig& c) {
    if (c.snapshot_lengths.empty()) throw ConfigError("snapshot_lengths must not be empty");
    const double l_min = *std::min_element(c.snapshot_lengths.begin(), c.snapshot_lengths.end());
    const double l_max = *std::max_element(c.snapshot_lengths.begin(), c.snapshot_lengths.end());
    const double detuning = c.detunings.empty() ? 0.0 : c.detunings.front();

    // One grid, launch point and time step for every length so the columns align.
    ScatteringSetup shared = propagation_setup(c, l_min, c.k0, detuning);
    shared.t_max = c.t_snapshot;
    if (!shared.z0) {
        const auto [lo, hi] = support(make_profile(c.profile, c.lambda0, l_max), 1e-8);
        shared.z0 = std::min(lo, 0.0) - 5.0 * c.delta_z;
    }
    const PropagationConfig base = plan_propagation(shared);

    ResultTable t;
    t.columns.push_back("z");
    for (double l : c.snapshot_lengths) {
        t.columns.push_back("density_e_L=" + label_number(l));
        t.columns.push_back("density_g_L=" + label_number(l));
    }
    std::vector<Snapshot> snaps(c.snapshot_lengths.size());
    auto outcomes = run_indexed(c.snapshot_lengths.size(), [&](std::size_t i) {
        PropagationConfig pc = base;
        pc.profile = make_profile(c.profile, c.lambda0, c.snapshot_lengths[i]);
        pc.stop_when_converged = false;
        const auto r = propagate(pc);
        snaps[i] = snapshot(r.final, r.t_end);
    });
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        if (outcomes[i].error)
            throw ExperimentFailure(std::string(to_string(c.id)) + ": L = " + label_number(c.snapshot_lengths[i]) +
                                        " failed: " + what_of(outcomes[i].error),
                                    std::move(t), is_convergence_error(outcomes[i].error));
    t.metadata.push_back("t: " + format_number(snaps.front().t));
    for (std::size_t k = 0; k < base.grid.points; ++k) {
        std::vector<double> row{base.grid.z(k)};
        for (const auto& s : snaps) {
            row.push_back(s.excited[k]);
            row.push_back(s.ground[k]);
        }
        t.add_row(std::move(row));
    }
    return t;
}

inline ResultTable time_experiment(const ExperimentConfig& c) {
    const double detuning = c.detunings.empty() ? 0.0 : c.detunings.front();
    PropagationConfig pc = plan_propagation(propagation_setup(c, c.length, c.k0, detuning));
    pc.stop_when_converged = false;
    auto run = [&] {
        try {
            return propagate(pc);
        } catch (const GridError& e) {
            throw ExperimentFailure(std::string(to_string(c.id)) + ": " + e.what(), {}, true);
        }
    };
    const PropagationResult r = run();
    ResultTable t = time_series_table(r.series);
    if (c.delta_z < c.length && c.profile != "meza")
        t.metadata.push_back("collapse_estimate: " + format_number(collapse_time_estimate(pc.profile, c.delta_z, c.k0)));
    return t;
}

}  // namespace detail

/// Generates the data table of an experiment. Metadata lines carry the
/// resolved configuration, the library version and the runtime.
inline ResultTable run_experiment(const ExperimentConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    ResultTable t;
    if (c.solver == "analytic" && c.profile == "gaussian")
        throw ConfigError(std::string(to_string(c.id)) + ": no closed form for the gaussian profile");
    try {
        if (c.sweep == "snapshot") t = detail::snapshot_experiment(c);
        else if (c.sweep == "time") t = detail::time_experiment(c);
        else t = detail::sweep_table(c);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string(to_string(c.id)) + ": " + e.what());
    }
    std::vector<std::string> meta{"experiment: " + std::string(to_string(c.id)),
                                  "config: " + to_json(c).dump(),
                                  "version: " + std::string(version)};
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    meta.push_back("runtime_s: " + format_number(seconds));
    meta.insert(meta.end(), t.metadata.begin(), t.metadata.end());
    t.metadata = std::move(meta);
    return t;
}

// ---------------------------------------------------------------------------
// Validation

/// Reports violated invariants without running anything.
inline std::vector<std::string> validate_config(const ExperimentConfig& c) {
    std::vector<std::string> out;
    auto add = [&](std::string s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    };
    if (c.profile != "meza" && c.profile != "sech" && c.profile != "gaussian")
        add("profile: must be meza, sech or gaussian");
    if (c.solver != "analytic" && c.solver != "propagator") add("solver: must be analytic or propagator");
    if (c.solver == "analytic" && c.profile == "gaussian") add("solver: no closed form for the gaussian profile");
    if (c.solver == "analytic" && c.detunings.size() == 1 && c.detunings.front() != 0.0)
        add("detuning: closed forms exist only at zero detuning");
    if (!(c.lambda0 >= 0.0)) add("lambda0: must be >= 0");
    if (!(c.length > 0.0)) add("L: must be > 0");
    if (!(c.k0 > 0.0)) add("k0: must be > 0");
    if (c.points < 1) add("points: must be >= 1");
    if ((c.sweep == "k0" || c.sweep == "L") && !(c.sweep_min >= 0.0 && c.sweep_max > c.sweep_min))
        add("sweep: need 0 <= sweep_min < sweep_max");
    if (c.sweep == "L" && !c.open_left && !(c.sweep_min > 0.0)) add("sweep: L must stay > 0");
    for (double f : c.dk_fractions)
        if (!(f >= 0.0)) add("dk_fractions: must be >= 0");
    try {
        (void)parse_photon_kind(c.photon);
    } catch (const std::exception& e) {
        add(std::string("photon: ") + e.what());
    }
    for (double n0 : c.n0_values)
        if (!(n0 >= 0.0)) add("n0_values: must be >= 0");
    if (!(c.delta_z > 0.0) && c.solver == "propagator") add("delta_z: must be > 0");
    if (!out.empty() || c.solver != "propagator") return out;

    // Propagator: plan every run and check the resulting configuration.
    std::vector<double> lengths{c.length};
    std::vector<double> momenta{c.k0};
    if (c.sweep == "L") lengths = sweep_values(c);
    if (c.sweep == "k0") momenta = sweep_values(c);
    if (c.sweep == "snapshot") lengths = c.snapshot_lengths;
    for (double l : lengths)
        for (double k : momenta)
            for (double d : c.detunings) {
                try {
                    for (const auto& msg : diagnose(plan_propagation(propagation_setup(c, l, k, d)))) add(msg);
                } catch (const std::exception& e) {
                    add(e.what());
                }
            }
    return out;
}

/// Configuration for `id` from a JSON document holding one object per
/// experiment, keyed by experiment id (other keys are ignored).
inline ExperimentConfig config_from_document(ExperimentId id, const nlohmann::json& doc) {
    ExperimentConfig c = default_config(id);
    if (!doc.is_object()) throw ConfigError("configuration file must hold a JSON object");
    const std::string key{to_string(id)};
    if (doc.contains(key)) apply_overrides(c, doc.at(key));
    return c;
}

}  // namespace mazer
