#pragma once

#include <filesystem>
#include <optional>

#include "json.hpp"
#include "stowave/dynamics.hpp"

namespace stowave {

/// Parsed and validated experiment configuration.  `effective` is the input
/// document with the CLI seed override applied; its canonical dump is what
/// config_hash() fingerprints, so identical runs stamp identical hashes.
struct RunConfig {
    nlohmann::json effective;
    Params params;
    Grid grid{1, 8.0, 256};
    double dt = 0.0;  ///< flow step resolved from experiment.dt / experiment.cfl
    std::uint64_t seed = 1;
    int threads = 1;
    std::filesystem::path out_dir = "out";
    nlohmann::json experiment;  ///< subcommand-specific block (may be empty)

    Model build_model() const;
    std::string hash() const;
};

/// Parses the documented schema (params / grid / nonlinearity / noise /
/// forcing / experiment / output blocks), applies defaults, and checks the
/// cross-block invariants: parameter admissibility, CFL bound on the step,
/// p consistency between blocks, profile length == noise.m, and noise
/// horizon/dt consistency when those keys are pinned.  Throws ConfigError.
RunConfig parse_config(nlohmann::json doc, std::optional<std::uint64_t> seed_override = {},
                       std::optional<std::string> out_override = {},
                       std::optional<int> threads_override = {});

RunConfig load_config(const std::filesystem::path& file,
                      std::optional<std::uint64_t> seed_override = {},
                      std::optional<std::string> out_override = {},
                      std::optional<int> threads_override = {});

/// Reference configuration document for the canonical parameter point
/// (1D, L = 8, N = 256, unit Gaussian mode).  Experiment blocks are filled
/// per subcommand with the documented defaults.
nlohmann::json canonical_config();

}  // namespace stowave
