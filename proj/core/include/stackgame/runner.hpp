#pragma once

#include <filesystem>
#include <span>

#include "stackgame/reporting.hpp"
#include "stackgame/scenario_io.hpp"

namespace stackgame {

/// Which engine loop a command drives.
enum class RunKind { aggregate, device_level };

/// Runs a scenario and emits its output files into out_dir. Returns the run
/// result so callers can inspect the termination reason.
RunResult run_and_emit(const Scenario& scenario, RunKind kind,
                       const std::filesystem::path& out_dir, bool force = false);

/// Grid of device-level runs over noise bounds x seeds. For each epsilon and
/// each seed offset s in [0, n_seeds), the scenario is re-run with that
/// epsilon and seed = scenario.seed + s, writing the usual file set plus the
/// effective scenario.cfg into out_dir/eps_<epsilon>/seed_<seed>/. Returns
/// true when every run completed without an early termination.
bool sweep_epsilon(const Scenario& scenario, std::span<const double> epsilons,
                   int n_seeds, const std::filesystem::path& out_dir,
                   bool force = false);

}  // namespace stackgame
