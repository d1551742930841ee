#pragma once

#include <filesystem>

#include "stackgame/engine.hpp"

namespace stackgame {

/// Writes the full output set for one run into out_dir:
///   iterations.csv           one row per (round, device); columns iter,
///                            device, xi1, xi2, y_true, y_hat, alpha_0..,
///                            fit_method, fit_residual, v_d, y_d, J_L_true,
///                            relerr_alpha_0.. with variable-width groups
///                            blank-padded to the widest row
///   summary.txt              termination reason and final-round snapshot
///   plotdata_relerr.csv      round vs per-device coefficient errors
///   plotdata_satisfaction.csv  true and last-fitted satisfaction sampled
///                            densely on [0, ybar/10]
///
/// The directory is created if missing. Existing output files are refused
/// unless force is set; an unwritable path raises std::runtime_error naming
/// it. Requires a nonempty record list.
void emit_records(const RunResult& result, const Scenario& scenario,
                  const std::filesystem::path& out_dir, bool force = false);

}  // namespace stackgame
