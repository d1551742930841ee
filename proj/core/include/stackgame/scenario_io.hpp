#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "stackgame/engine.hpp"

namespace stackgame {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

/// Parses a scenario from the line-oriented config text.
///
/// Grammar: `key = value` lines; global keys p, ybar, vbar, beta, objective
/// (`revdecoup` or `demresp:<yref>`), max_iters, epsilon, seed, fit_tol, tol;
/// each `[device]` header opens a block with keys sat (`log:<a>` or
/// `poly:<a0>,<a1>,...`), gamma0 and gamma1 (`<xi1>,<xi2>`). `#` starts a
/// comment. Unknown keys, bad numbers, missing device fields and an empty
/// device list all raise ConfigError with the offending line number. The
/// returned scenario is validated.
Scenario parse_scenario(std::string_view text);

/// parse_scenario on a file's contents; the filename is prefixed to errors.
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes a scenario back to config text. Round-trips exactly:
/// parse_scenario(render_scenario(s)) reproduces s for every valid s.
std::string render_scenario(const Scenario& scenario);

}  // namespace stackgame
