#pragma once

#include <string>

#include "stowave/config.hpp"

namespace stowave {

/// Executes one CLI subcommand (validate, simulate, pullback, absorb,
/// tails, attractor, vitali): builds the experiment from the config, writes
/// the artifacts into cfg.out_dir, and returns the summary document.
/// Artifacts are a pure function of the effective config; the only
/// timestamped output is the run_meta.json sidecar.  Throws ConfigError for
/// bad or inadmissible configuration, CheckFailure when an experiment
/// verdict fails, std::runtime_error for runtime faults.
nlohmann::json run_subcommand(const std::string& name, const RunConfig& cfg);

}  // namespace stowave
