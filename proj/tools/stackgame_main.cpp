#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "stackgame/runner.hpp"

using namespace stackgame;

int main(int argc, char** argv) {
    CLI::App app{"iterative incentive design against consumers with private satisfaction"};
    app.require_subcommand(1);

    std::string config, out;
    bool force = false;
    std::uint64_t seed = 0;
    int iters = 0;
    double epsilon = 0.0;
    std::vector<double> epsilons;
    int n_seeds = 20;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "scenario config file")->required();
        sub->add_option("--out", out, "output directory")->required();
        sub->add_flag("--force", force, "overwrite existing output files");
        sub->add_option("--seed", seed, "override the scenario seed");
        sub->add_option("--iters", iters, "override the round count");
    };

    auto* agg = app.add_subcommand(
        "run-aggregate", "run the single-consumer aggregate loop");
    add_common(agg);
    auto* agg_seed = agg->get_option("--seed");
    auto* agg_iters = agg->get_option("--iters");

    auto* dev = app.add_subcommand(
        "run-devices", "run the per-device loop with disaggregated observations");
    add_common(dev);
    auto* dev_seed = dev->get_option("--seed");
    auto* dev_iters = dev->get_option("--iters");
    auto* dev_eps = dev->add_option("--epsilon", epsilon,
                                    "override the disaggregation error bound");

    auto* sweep = app.add_subcommand(
        "sweep-epsilon", "grid of device-level runs over noise bounds and seeds");
    add_common(sweep);
    auto* sweep_seed = sweep->get_option("--seed");
    auto* sweep_iters = sweep->get_option("--iters");
    sweep->add_option("--epsilons", epsilons, "comma-separated noise bounds")
        ->required()
        ->delimiter(',');
    sweep->add_option("--seeds", n_seeds, "seeds per noise bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Scenario scenario = load_scenario(config);
        auto apply_overrides = [&](CLI::Option* seed_opt, CLI::Option* iters_opt) {
            if (seed_opt->count()) scenario.seed = seed;
            if (iters_opt->count()) scenario.max_iters = iters;
        };

        if (agg->parsed()) {
            apply_overrides(agg_seed, agg_iters);
            auto result = run_and_emit(scenario, RunKind::aggregate, out, force);
            std::cout << "wrote " << out << " (" << result.records.size()
                      << " rounds, " << to_string(result.termination) << ")\n";
            if (result.termination != Termination::completed) {
                std::cerr << "stopped early: " << result.detail << '\n';
                return 2;
            }
        } else if (dev->parsed()) {
            apply_overrides(dev_seed, dev_iters);
            if (dev_eps->count()) scenario.epsilon = epsilon;
            auto result = run_and_emit(scenario, RunKind::device_level, out, force);
            std::cout << "wrote " << out << " (" << result.records.size()
                      << " rounds, " << to_string(result.termination) << ")\n";
            if (result.termination != Termination::completed) {
                std::cerr << "stopped early: " << result.detail << '\n';
                return 2;
            }
        } else {
            apply_overrides(sweep_seed, sweep_iters);
            bool ok = sweep_epsilon(scenario, epsilons, n_seeds, out, force);
            std::cout << "wrote " << out << " (" << epsilons.size() << " bounds x "
                      << n_seeds << " seeds)\n";
            if (!ok) {
                std::cerr << "at least one run stopped before its round budget\n";
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
