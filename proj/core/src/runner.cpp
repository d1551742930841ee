#include "stackgame/runner.hpp"

#include <fstream>
#include <stdexcept>

namespace stackgame {

RunResult run_and_emit(const Scenario& scenario, RunKind kind,
                       const std::filesystem::path& out_dir, bool force) {
    RunResult result = kind == RunKind::aggregate ? run_aggregate(scenario)
                                                  : run_device_level(scenario);
    emit_records(result, scenario, out_dir, force);
    return result;
}

bool sweep_epsilon(const Scenario& scenario, std::span<const double> epsilons,
                   int n_seeds, const std::filesystem::path& out_dir, bool force) {
    scenario.validate();
    if (epsilons.empty())
        throw ConfigError("the sweep needs at least one epsilon");
    if (n_seeds <= 0)
        throw ConfigError("the sweep needs a positive seed count");

    bool all_completed = true;
    for (double eps : epsilons) {
        for (int k = 0; k < n_seeds; ++k) {
            Scenario run = scenario;
            run.epsilon = eps;
            run.seed = scenario.seed + static_cast<std::uint64_t>(k);
            auto dir = out_dir / ("eps_" + format_double(eps)) /
                       ("seed_" + std::to_string(run.seed));
            std::filesystem::create_directories(dir);

            auto cfg_path = dir / "scenario.cfg";
            if (!force && std::filesystem::exists(cfg_path))
                throw std::runtime_error(cfg_path.string() +
                                         " already exists; enable force to overwrite");
            std::ofstream cfg(cfg_path, std::ios::binary | std::ios::trunc);
            if (!cfg) throw std::runtime_error("cannot write " + cfg_path.string());
            cfg << render_scenario(run);
            cfg.close();

            auto result = run_device_level(run);
            emit_records(result, run, dir, force);
            if (result.termination != Termination::completed) all_completed = false;
        }
    }
    return all_completed;
}

}  // namespace stackgame
