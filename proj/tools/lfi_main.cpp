// lfi: command-line front end for the likelihood-free inference toolkit.
//
//   lfi curve --seed 1 --out runs/curve [--config run.yaml] [--set key=value ...]
//
// Exit codes: 0 success, 2 config error, 3 budget exhaustion, 4 numerical failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harness/commands.hpp"
#include "harness/config.hpp"

namespace {

struct Options {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::vector<std::string> overrides;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description, Options& options) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", options.config_path, "YAML run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", options.seed, "root seed (required; no clock seeding)")->required();
    sub->add_option("--out", options.out_dir, "output directory")->required();
    sub->add_option("--set", options.overrides, "override a config key, e.g. --set sample_size=500");
    return sub;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace lfi::harness;

    CLI::App app{"Likelihood-free inference via classifier discrepancy and GP-based Bayesian optimization"};
    app.require_subcommand(1);
    Options options;
    const std::vector<std::pair<Command, CLI::App*>> commands = {
        {Command::kCurve, add_command(app, "curve", "discriminability vs theta at large n", options)},
        {Command::kDist, add_command(app, "dist", "distribution of the stochastic discrepancy per theta", options)},
        {Command::kAbc, add_command(app, "abc", "rejection ABC with the classifier discrepancy", options)},
        {Command::kBolfi, add_command(app, "bolfi", "GP surrogate + LCB acquisition loop", options)},
        {Command::kBudget, add_command(app, "budget", "simulation budget: rejection ABC vs Bayesian optimization", options)},
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        Command command = Command::kCurve;
        for (const auto& [c, sub] : commands) {
            if (sub->parsed()) command = c;
        }
        RunConfig config = default_config(command);
        if (!options.config_path.empty()) apply_config_file(config, options.config_path);
        for (const auto& assignment : options.overrides) apply_override(config, assignment);
        config.seed = options.seed;
        config.out_dir = options.out_dir;
        config.threads = thread_count_from_env();

        const CommandResult result = run_command(config);
        std::cout << result.summary.dump() << '\n';
        std::cout << "manifest: " << result.manifest.string() << '\n';
        return result.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lfi::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lfi::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
