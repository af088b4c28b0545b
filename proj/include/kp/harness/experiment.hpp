#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "kp/evolution.hpp"
#include "kp/harness/config.hpp"

namespace kp::harness {

// Writes config.json, trajectory/, one CSV family per diagnostic and
// manifest.json (config hash, toolkit version, file list) under `out`
// (cfg.output_dir when empty). Returns the run directory.
std::filesystem::path run_experiment(const ExperimentConfig& cfg,
                                     const std::filesystem::path& out = {});

Trajectory run_trajectory(const ExperimentConfig& cfg);

// Each writer returns the files it created, relative to dir.
std::vector<std::string> write_norms(const Trajectory& traj, const std::filesystem::path& dir);
std::vector<std::string> write_sup_norms(const Trajectory& traj, const nlohmann::json& params,
                                         const std::filesystem::path& dir);
std::vector<std::string> write_decompose(const Trajectory& traj, const nlohmann::json& params,
                                         const std::filesystem::path& dir);
std::vector<std::string> write_gamma(const Trajectory& traj, const nlohmann::json& params,
                                     const std::filesystem::path& dir);
std::vector<std::string> write_resonances(const nlohmann::json& params,
                                          const std::filesystem::path& dir);
std::vector<std::string> write_scatter(const Trajectory& traj, const nlohmann::json& params,
                                       const std::filesystem::path& dir);

std::vector<std::string> run_diagnostic(const DiagnosticSpec& d, const Trajectory& traj,
                                        const std::filesystem::path& dir);

}  // namespace kp::harness
