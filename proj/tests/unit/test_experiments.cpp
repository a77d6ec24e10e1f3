#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mazer/experiments.hpp"

using namespace mazer;

namespace {

constexpr double pi = std::numbers::pi;

std::string data_section(const ResultTable& t) {
    std::ostringstream os;
    write_data(os, t);
    return os.str();
}

std::size_t column(const ResultTable& t, const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    if (it == t.columns.end()) throw std::runtime_error("missing column " + name);
    return static_cast<std::size_t>(it - t.columns.begin());
}

bool has_diagnostic(const std::vector<std::string>& d, const std::string& prefix) {
    return std::any_of(d.begin(), d.end(), [&](const std::string& m) { return m.rfind(prefix, 0) == 0; });
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MAZER_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

TEST(ExperimentConfig, DefaultsFollowTheFigureCaptions) {
    const auto f1 = default_config(ExperimentId::fig1);
    EXPECT_EQ(f1.profile, "meza");
    EXPECT_EQ(f1.lambda0, 1.0);
    EXPECT_EQ(f1.length, 50.0);
    EXPECT_EQ(f1.points, 150);
    EXPECT_EQ(f1.dk_fractions, (std::vector<double>{0.0, 0.02, 0.1}));
    const auto f2 = default_config(ExperimentId::fig2);
    EXPECT_EQ(f2.k0, 0.1);
    EXPECT_EQ(f2.dk_fractions, (std::vector<double>{0.0, 0.5}));
    EXPECT_EQ(f2.points, 200);
    EXPECT_EQ(default_config(ExperimentId::fig3b).photon, "thermal");
    EXPECT_EQ(default_config(ExperimentId::fig3a).n0_values, (std::vector<double>{0.0, 0.2, 1.0}));
    EXPECT_EQ(default_config(ExperimentId::fig4).length, 5.0);
    EXPECT_EQ(default_config(ExperimentId::fig5).profile, "sech");
    const auto f6 = default_config(ExperimentId::fig6);
    EXPECT_EQ(f6.delta_z, 15.0);
    EXPECT_EQ(f6.k0, 0.1);
    EXPECT_EQ(f6.points, 40);
    EXPECT_EQ(f6.detunings, (std::vector<double>{0.0, 0.02, 0.1}));
    EXPECT_EQ(default_config(ExperimentId::fig7).snapshot_lengths, (std::vector<double>{2.1245, 1.8108}));
    const auto f8 = default_config(ExperimentId::fig8);
    EXPECT_EQ(f8.delta_z, 10.0);
    EXPECT_EQ(f8.k0, 6.0);
    EXPECT_EQ(f8.detunings, (std::vector<double>{0.0}));
}

TEST(ExperimentConfig, IdsRoundTrip) {
    for (const auto& [id, name] : experiment_names()) EXPECT_EQ(parse_experiment_id(name), id);
    EXPECT_THROW(parse_experiment_id("fig9"), ConfigError);
}

TEST(ExperimentConfig, JsonEchoRoundTrips) {
    auto c = default_config(ExperimentId::fig6);
    c.dt = 0.01;
    ExperimentConfig back = default_config(ExperimentId::fig6);
    apply_overrides(back, to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
}

TEST(ExperimentConfig, OverridesAndErrors) {
    auto c = default_config(ExperimentId::fig2);
    apply_assignment(c, "k0=0.2");
    apply_assignment(c, "profile=sech");
    apply_assignment(c, "dk_fractions=[0, 0.1]");
    EXPECT_EQ(c.k0, 0.2);
    EXPECT_EQ(c.profile, "sech");
    EXPECT_EQ(c.dk_fractions, (std::vector<double>{0.0, 0.1}));
    EXPECT_THROW(apply_assignment(c, "nonsense=1"), ConfigError);
    EXPECT_THROW(apply_assignment(c, "k0=fast"), ConfigError);
    EXPECT_THROW(apply_assignment(c, "k0"), ConfigError);
    EXPECT_THROW(apply_overrides(c, nlohmann::json::parse(R"({"experiment": "fig1"})")), ConfigError);
}

TEST(ExperimentConfig, DocumentHoldsOneObjectPerExperiment) {
    const auto doc = nlohmann::json::parse(R"({"fig1": {"points": 10}, "fig2": {"points": 20}})");
    EXPECT_EQ(config_from_document(ExperimentId::fig1, doc).points, 10);
    EXPECT_EQ(config_from_document(ExperimentId::fig2, doc).points, 20);
    EXPECT_EQ(config_from_document(ExperimentId::fig4, doc).points, 150);
}

// ---------------------------------------------------------------------------
// Validation

TEST(ValidateConfig, Fig8DefaultsAreClean) { EXPECT_TRUE(validate_config(default_config(ExperimentId::fig8)).empty()); }

TEST(ValidateConfig, PlacementDiagnostic) {
    auto c = default_config(ExperimentId::fig8);
    c.z0 = -20.0;  // Delta z = 10 > |z0| / 3
    EXPECT_TRUE(has_diagnostic(validate_config(c), "placement: packet width"));
}

TEST(ValidateConfig, StabilityDiagnosticSuggestsStep) {
    auto c = default_config(ExperimentId::fig8);
    c.dt = 0.5;
    const auto d = validate_config(c);
    ASSERT_TRUE(has_diagnostic(d, "stability: dt * k_max^2 / 2"));
    const auto it = std::find_if(d.begin(), d.end(), [](const auto& m) { return m.find("k_max^2") != std::string::npos; });
    EXPECT_NE(it->find("suggested dt <= "), std::string::npos);
}

TEST(ValidateConfig, StructuralProblems) {
    auto c = default_config(ExperimentId::fig1);
    c.profile = "gaussian";
    EXPECT_TRUE(has_diagnostic(validate_config(c), "solver: no closed form"));
    c = default_config(ExperimentId::fig1);
    c.k0 = -1.0;
    c.photon = "squeezed";
    const auto d = validate_config(c);
    EXPECT_TRUE(has_diagnostic(d, "k0"));
    EXPECT_TRUE(has_diagnostic(d, "photon"));
}

// ---------------------------------------------------------------------------
// Analytic experiments

TEST(RunExperiment, Fig2ResonancesAtMPiOverSqrt2) {
    const auto t = run_experiment(default_config(ExperimentId::fig2));
    ASSERT_EQ(t.rows.size(), 200u);
    const auto col = column(t, "P_trans_dk=0k0");
    const double step = t.rows[1][0] - t.rows[0][0];
    for (int m = 1; m <= 5; ++m) {
        const double target = m * pi / std::sqrt(2.0);
        bool found = false;
        for (std::size_t i = 1; i + 1 < t.rows.size(); ++i) {
            const double y = t.rows[i][col];
            if (y > t.rows[i - 1][col] && y >= t.rows[i + 1][col] && std::abs(t.rows[i][0] - target) <= step)
                found = true;
        }
        EXPECT_TRUE(found) << "m = " << m;
    }
}

TEST(RunExperiment, Fig5ApproachesHalfAtLargeWaist) {
    const auto t = run_experiment(default_config(ExperimentId::fig5));
    const auto& last = t.rows.back();
    EXPECT_DOUBLE_EQ(last[0], 20.0);
    EXPECT_NEAR(last[column(t, "P_trans_dk=0k0")], 0.5, 0.05);
    EXPECT_NEAR(last[column(t, "S_dk=0k0")], 1.0, 0.05);
}

TEST(RunExperiment, CustomFreeParticleTransmitsEverything) {
    auto c = default_config(ExperimentId::custom);
    c.lambda0 = 0.0;
    c.points = 25;
    const auto t = run_experiment(c);
    for (const auto& row : t.rows) EXPECT_NEAR(row[1], 1.0, 1e-14);
}

TEST(RunExperiment, Fig3HasOneColumnPerMeanPhotonNumber) {
    auto c = default_config(ExperimentId::fig3a);
    c.points = 20;
    const auto t = run_experiment(c);
    EXPECT_EQ(t.columns.size(), 7u);
    EXPECT_NO_THROW(column(t, "P_trans_coherent_n0=0.2"));
    EXPECT_NO_THROW(column(t, "P_trans_coherent_n0=1"));
}

TEST(RunExperiment, MetadataEchoesTheConfiguration) {
    auto c = default_config(ExperimentId::fig4);
    c.points = 5;
    const auto t = run_experiment(c);
    ASSERT_GE(t.metadata.size(), 4u);
    EXPECT_EQ(t.metadata[0], "experiment: fig4");
    const auto echo = nlohmann::json::parse(t.metadata[1].substr(std::string("config: ").size()));
    ExperimentConfig back = default_config(ExperimentId::fig4);
    apply_overrides(back, echo);
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_EQ(t.metadata[2].rfind("version: ", 0), 0u);
    EXPECT_EQ(t.metadata[3].rfind("runtime_s: ", 0), 0u);
}

TEST(RunExperiment, DataIndependentOfWorkerCount) {
    auto c = default_config(ExperimentId::fig1);
    c.points = 30;
    ::setenv("MAZER_WORKERS", "1", 1);
    const auto a = data_section(run_experiment(c));
    ::setenv("MAZER_WORKERS", "4", 1);
    const auto b = data_section(run_experiment(c));
    ::unsetenv("MAZER_WORKERS");
    EXPECT_EQ(a, b);
}

TEST(RunExperiment, InvalidConfigurationIsAConfigError) {
    auto c = default_config(ExperimentId::fig1);
    c.profile = "gaussian";
    EXPECT_THROW(run_experiment(c), ConfigError);
}

TEST(RunExperiment, PropagatorFailureIdentifiesThePoint) {
    auto c = default_config(ExperimentId::fig6);
    c.sweep_min = 1.0;
    c.sweep_max = 2.0;
    c.points = 2;
    c.detunings = {0.0};
    c.t_max = 20.0;  // far too short to settle
    try {
        run_experiment(c);
        FAIL() << "expected a failure";
    } catch (const ExperimentFailure& f) {
        EXPECT_TRUE(f.convergence);
        EXPECT_NE(std::string(f.what()).find("sweep point 0"), std::string::npos);
        EXPECT_TRUE(f.partial.rows.empty());
    }
}

TEST(WorkerPool, CapturesErrorsPerIndex) {
    std::vector<int> out(10, 0);
    const auto r = run_indexed(
        10,
        [&](std::size_t i) {
            if (i == 7) throw std::runtime_error("boom");
            out[i] = static_cast<int>(i) * 2;
        },
        3);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(static_cast<bool>(r[i].error), i == 7);
        if (i != 7) {
            EXPECT_EQ(out[i], static_cast<int>(i) * 2);
        }
    }
}

// ---------------------------------------------------------------------------
// Command line

TEST(Cli, ExitCodes) {
    const std::string dir = ::testing::TempDir();
    EXPECT_EQ(run_cli("list"), 0);
    EXPECT_EQ(run_cli("run fig1 --set points=3 --out " + dir + "/fig1.csv"), 0);
    EXPECT_EQ(run_cli("run fig1 --set bogus=3"), 1);
    EXPECT_EQ(run_cli("run fig9"), 1);
    EXPECT_EQ(run_cli("run fig1 --set points=3 --out /nonexistent-dir/x.csv"), 3);
    EXPECT_EQ(run_cli("run fig1 --config /nonexistent-dir/cfg.json"), 3);
    EXPECT_EQ(run_cli("run fig6 --set points=1 --set sweep_min=1 --set sweep_max=2 --set detunings=[0] --set t_max=20"),
              2);

    {
        std::ofstream cfg(dir + "/ok.json");
        cfg << R"({"fig8": {}})";
    }
    EXPECT_EQ(run_cli("validate --config " + dir + "/ok.json"), 0);
    {
        std::ofstream cfg(dir + "/bad.json");
        cfg << R"({"fig8": {"dt": 0.5}})";
    }
    EXPECT_EQ(run_cli("validate --config " + dir + "/bad.json"), 1);

    std::ifstream in(dir + "/fig1.csv");
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first, "# experiment: fig1");
}
