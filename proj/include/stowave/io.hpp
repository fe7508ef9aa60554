#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "stowave/experiments.hpp"
#include "stowave/vitali.hpp"

namespace stowave {

/// Little-endian binary container for a sampled noise path ("SWNPATH1"
/// magic, seed/window/step header, mode-major increments).  Loading an
/// unmodified file reproduces the path bit for bit.
void save_noise_path(const NoisePath& path, const std::filesystem::path& file);
NoisePath load_noise_path(const std::filesystem::path& file);

/// Shortest round-trip decimal representation (17 significant digits).
std::string format_double(double v);

/// FNV-1a 64 over the canonical dump (sorted keys, no whitespace), as 16
/// hex digits.  Every artifact a run writes embeds this value.
std::string config_hash(const nlohmann::json& config);

void write_text_file(const std::string& body, const std::filesystem::path& file);
/// Sorted-key, 2-space-indented dump with trailing newline.
void write_json_file(const nlohmann::json& j, const std::filesystem::path& file);

/// CSV builders.  Every document starts with "# config_hash=<hash>" and a
/// header row; all numbers use format_double.
std::string field_csv(const Field& f, const std::string& hash);
std::string path_csv(const NoisePath& path, const std::string& hash);
std::string energy_csv(const EnergyReport& rep, const std::string& hash);
std::string tail_csv(const TailReport& rep, const std::string& hash);
std::string absorb_csv(const AbsorbReport& rep, const std::string& hash);
std::string pullback_csv(const PullbackEnsembleReport& rep, std::span<const double> horizons,
                         const std::string& hash);
std::string cloud_csv(const StateCloud& cloud, const Grid& g, const std::string& hash);
std::string lattice_family_csv(const LatticeFamily& fam, const std::string& hash);

/// Lattice family from CSV rows "member,cell,measure,value"; member -1
/// holds the limit function.  Throws ConfigError on malformed input.
LatticeFamily load_lattice_family_csv(const std::filesystem::path& file);

}  // namespace stowave
