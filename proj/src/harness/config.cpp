#include "kp/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "kp/error.hpp"
#include "kp/geometry.hpp"

namespace kp::harness {

namespace {

const std::set<std::string> kKinds = {"norms", "sup_norms", "decompose",
                                      "gamma", "resonances", "scatter"};

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kConfig, field + ": " + what);
}

void validate_diagnostic(const DiagnosticSpec& d, std::size_t n) {
  const std::string where = "diagnostics[" + std::to_string(n) + "]";
  if (!kKinds.count(d.kind)) field_error(where + ".kind", "unknown diagnostic '" + d.kind + "'");
  if (!d.params.is_object()) field_error(where + ".params", "must be an object");
  if (d.kind == "gamma") {
    if (!d.params.contains("rays") || !d.params.at("rays").is_array()) {
      field_error(where + ".params.rays", "required array of [v1, v2]");
    }
    for (const auto& r : d.params.at("rays")) {
      if (!r.is_array() || r.size() != 2) field_error(where + ".params.rays", "entries are [v1, v2]");
      const RayVelocity v{r[0].get<double>(), r[1].get<double>()};
      if (!v.admissible()) {
        field_error(where + ".params.rays",
                    "ray (" + std::to_string(v.v1) + ", " + std::to_string(v.v2) +
                        ") is not admissible (needs -v1 + v2^2/4 > 0)");
      }
    }
  }
  if (d.params.contains("times")) {
    for (const auto& t : d.params.at("times")) {
      if (!t.is_number()) field_error(where + ".params.times", "must be numbers");
    }
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    grid.validate();
  } catch (const Error& e) {
    field_error("grid", e.what());
  }
  initial.validate();
  try {
    solver.validate();
  } catch (const Error& e) {
    field_error("solver", e.what());
  }
  if (output_dir.empty()) field_error("output_dir", "must not be empty");
  for (std::size_t n = 0; n < diagnostics.size(); ++n) validate_diagnostic(diagnostics[n], n);
}

nlohmann::json to_json(const Grid2D& g) {
  return {{"nx", g.nx}, {"ny", g.ny}, {"Lx", g.lx}, {"Ly", g.ly}, {"x0", g.x0}, {"y0", g.y0}};
}

Grid2D grid_from_json(const nlohmann::json& j) {
  try {
    return Grid2D::make(j.at("nx").get<int>(), j.at("ny").get<int>(), j.at("Lx").get<double>(),
                        j.at("Ly").get<double>(), j.value("x0", 0.0), j.value("y0", 0.0));
  } catch (const nlohmann::json::exception& e) {
    field_error("grid", e.what());
  } catch (const Error& e) {
    field_error("grid", e.what());
  }
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json diags = nlohmann::json::array();
  for (const auto& d : c.diagnostics) diags.push_back({{"kind", d.kind}, {"params", d.params}});
  return {{"grid", to_json(c.grid)},
          {"initial_data", to_json(c.initial)},
          {"solver", to_json(c.solver)},
          {"diagnostics", diags},
          {"output_dir", c.output_dir},
          {"seed", c.seed}};
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) field_error("config", "must be a JSON object");
  ExperimentConfig c;
  if (j.contains("grid")) c.grid = grid_from_json(j.at("grid"));
  if (j.contains("initial_data")) c.initial = initial_data_from_json(j.at("initial_data"));
  if (j.contains("solver")) c.solver = solver_config_from_json(j.at("solver"));
  try {
    if (j.contains("diagnostics")) {
      for (const auto& d : j.at("diagnostics")) {
        c.diagnostics.push_back(
            {d.at("kind").get<std::string>(), d.value("params", nlohmann::json::object())});
      }
    }
    c.output_dir = j.value("output_dir", c.output_dir);
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    field_error("config", e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, path.string() + ": " + e.what());
  }
  return experiment_config_from_json(j);
}

std::string config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : to_json(c).dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig theorem_suite_config() {
  ExperimentConfig c;
  c.grid = Grid2D::make(1024, 256, 1024.0, 256.0);
  c.initial.family = "modulated_gaussian";
  c.initial.epsilon = 0.01;
  c.initial.sigma_x = 4.0;
  c.initial.sigma_y = 4.0;
  c.initial.first = {1.0, 0.0, 0.0, 0.0};
  c.solver.dt = 0.05;
  c.solver.t_end = 64.0;
  for (double t : {1.0, 2.0, 4.0, 5.0, 8.0, 10.0, 12.0, 16.0, 20.0, 24.0, 32.0, 40.0, 48.0,
                   56.0, 64.0}) {
    c.solver.output_times.push_back(t);
  }
  c.output_dir = "theorem-suite";
  c.diagnostics = {
      {"norms", nlohmann::json::object()},
      {"sup_norms", {{"t_min", 5.0}}},
      {"decompose", {{"times", {4.0, 16.0, 64.0}}, {"delta", 1.0}, {"width", 0.5}}},
      {"gamma", {{"rays", {{-3.0, 0.0}}}, {"times", {10.0, 12.0, 16.0, 20.0, 24.0, 32.0, 40.0, 48.0, 56.0, 64.0}}}},
      {"resonances",
       {{"triads", {{1.0, 1.0, 1.7320508075688772, 1}, {0.5, 1.5, 0.3, 1}, {2.0, 0.7, -1.1, -1}}}}},
      {"scatter", {{"times", {8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0}}, {"alpha", 1.0 / 6.0}}},
  };
  return c;
}

}  // namespace kp::harness
