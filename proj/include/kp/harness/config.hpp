#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "kp/evolution.hpp"
#include "kp/harness/initial_data.hpp"

namespace kp::harness {

inline constexpr const char* kToolkitVersion = "0.3.0";

// kind is one of: norms, sup_norms, decompose, gamma, resonances, scatter.
// params holds kind-specific keys (times, rays, delta, width, alpha, ...).
struct DiagnosticSpec {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
};

struct ExperimentConfig {
  Grid2D grid = Grid2D::make(256, 128, 256.0, 128.0);
  InitialDataSpec initial;
  SolverConfig solver;
  std::vector<DiagnosticSpec> diagnostics;
  std::string output_dir = "run";
  std::uint64_t seed = 0;

  // Throws kConfig naming the offending field.
  void validate() const;
};

nlohmann::json to_json(const Grid2D& g);
Grid2D grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// FNV-1a (64 bit) of the compact JSON serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

// Canned run producing every diagnostic table used by the acceptance suite.
ExperimentConfig theorem_suite_config();

}  // namespace kp::harness
