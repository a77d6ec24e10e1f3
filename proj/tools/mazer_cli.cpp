// mazer - command-line front end for the figure experiments
//
//   mazer run <id> [--config FILE] [--out FILE] [--set key=value ...]
//   mazer validate --config FILE
//   mazer list
//
// Exit codes: 0 success, 1 configuration error, 2 convergence failure,
// 3 I/O failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mazer/experiments.hpp"

namespace {

enum Exit { ok = 0, config_error = 1, convergence_failure = 2, io_failure = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json load_document(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw mazer::ConfigError(path + ": " + e.what());
    }
}

void emit(const mazer::ResultTable& t, const std::string& out) {
    if (out.empty() || out == "-") {
        mazer::write_csv(std::cout, t);
        std::cout.flush();
        if (!std::cout) throw IoError("cannot write to stdout");
        return;
    }
    std::ofstream os(out);
    if (!os) throw IoError("cannot open " + out + " for writing");
    mazer::write_csv(os, t);
    os.flush();
    if (!os) throw IoError("write to " + out + " failed");
}

int cmd_run(const std::string& id, const std::string& config, const std::string& out,
            const std::vector<std::string>& sets) {
    mazer::ExperimentConfig c = mazer::config_from_document(mazer::parse_experiment_id(id), load_document(config));
    for (const auto& s : sets) mazer::apply_assignment(c, s);
    try {
        emit(mazer::run_experiment(c), out);
    } catch (const mazer::ExperimentFailure& f) {
        std::cerr << "mazer: " << f.what() << '\n';
        mazer::ResultTable partial = f.partial;
        partial.metadata.insert(partial.metadata.begin(), "partial: " + std::string(f.what()));
        emit(partial, out);
        return f.convergence ? convergence_failure : config_error;
    }
    return ok;
}

int cmd_validate(const std::string& config) {
    const nlohmann::json doc = load_document(config);
    if (!doc.is_object()) throw mazer::ConfigError("configuration file must hold a JSON object");
    int issues = 0;
    for (const auto& [key, value] : doc.items()) {
        const auto id = mazer::parse_experiment_id(key);
        std::vector<std::string> diags;
        try {
            diags = mazer::validate_config(mazer::config_from_document(id, doc));
        } catch (const mazer::ConfigError& e) {
            diags.push_back(e.what());
        }
        if (diags.empty()) std::cout << key << ": ok\n";
        for (const auto& d : diags) std::cout << key << ": " << d << '\n';
        issues += static_cast<int>(diags.size());
    }
    return issues == 0 ? ok : config_error;
}

int cmd_list() {
    for (const auto& [id, name] : mazer::experiment_names())
        std::cout << name << ' ' << mazer::to_json(mazer::default_config(id)).dump() << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mazer scattering experiments"};
    app.require_subcommand(1);

    std::string id, config, out;
    std::vector<std::string> sets;
    auto* run = app.add_subcommand("run", "run one experiment and write its CSV table");
    run->add_option("experiment", id, "experiment id (see `list`)")->required();
    run->add_option("--config", config, "JSON file with one object per experiment");
    run->add_option("--out", out, "output CSV path (default: stdout)");
    run->add_option("--set", sets, "override key=value (repeatable)");

    std::string vconfig;
    auto* validate = app.add_subcommand("validate", "check a configuration file without running");
    validate->add_option("--config", vconfig, "JSON file with one object per experiment")->required();

    auto* list = app.add_subcommand("list", "enumerate experiments with their defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : config_error;
    }

    try {
        if (*run) return cmd_run(id, config, out, sets);
        if (*validate) return cmd_validate(vconfig);
        if (*list) return cmd_list();
    } catch (const IoError& e) {
        std::cerr << "mazer: " << e.what() << '\n';
        return io_failure;
    } catch (const mazer::ConfigError& e) {
        std::cerr << "mazer: " << e.what() << '\n';
        return config_error;
    } catch (const mazer::NotConverged& e) {
        std::cerr << "mazer: " << e.what() << '\n';
        return convergence_failure;
    } catch (const mazer::GridError& e) {
        std::cerr << "mazer: " << e.what() << '\n';
        return convergence_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mazer: " << e.what() << '\n';
        return config_error;
    }
    return ok;
}
