#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kp/error.hpp"
#include "kp/harness/config.hpp"
#include "kp/harness/csv.hpp"
#include "kp/harness/experiment.hpp"
#include "kp/harness/fit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int report_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return 1;
}

fs::path prepare_out(const std::string& out) {
  fs::create_directories(out);
  return out;
}

json times_json(const std::vector<double>& times) {
  return times.empty() ? json() : json(times);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the KP-I equation"};
  app.require_subcommand(1);

  std::string config_path, out = "out", traj_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::vector<double> times;
  double delta = 1.0, width = 0.5, alpha = 1.0 / 6.0;
  std::vector<std::string> rays, triads;

  auto* evolve = app.add_subcommand("evolve", "Evolve initial data and write a trajectory");
  evolve->add_option("--config", config_path, "Experiment config (JSON)")->required();
  evolve->add_option("--out", out, "Output directory");
  evolve->add_option("--seed", seed, "Override the config seed")->each([&](const std::string&) {
    seed_given = true;
  });

  auto* run = app.add_subcommand("run", "Run a full experiment from a config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out, "Output directory");
  run->add_option("--seed", seed, "Override the config seed")->each([&](const std::string&) {
    seed_given = true;
  });

  auto* norms = app.add_subcommand("norms", "L2, sup and X norms along a trajectory");
  auto* decompose = app.add_subcommand("decompose", "Hyperbolic/elliptic pointwise profiles");
  auto* gamma = app.add_subcommand("gamma", "Asymptotic amplitude along rays");
  auto* scatter = app.add_subcommand("scatter", "Scattering residuals and back-propagation");
  for (auto* sc : {norms, decompose, gamma, scatter}) {
    sc->add_option("--trajectory", traj_dir, "Trajectory directory")->required();
    sc->add_option("--out", out, "Output directory");
  }
  for (auto* sc : {decompose, gamma, scatter}) {
    sc->add_option("--times", times, "Snapshot times (default: all)")->delimiter(',');
  }
  decompose->add_option("--delta", delta, "Dyadic ratio exponent");
  decompose->add_option("--width", width, "Hyperbolic cutoff width");
  gamma->add_option("--ray", rays, "Ray velocity as v1,v2")->required();
  scatter->add_option("--alpha", alpha, "Band exponent");

  auto* resonances = app.add_subcommand("resonances", "Construct resonant triads");
  resonances->add_option("--triad", triads, "xi1,xi2,eta1,branch")->required();
  resonances->add_option("--out", out, "Output directory");

  std::string csv_path;
  int t_col = 0, v_col = 1;
  double t_min = 0.0, t_max = std::numeric_limits<double>::infinity();
  auto* fit = app.add_subcommand("fit-decay", "Log-log power-law fit of a CSV column");
  fit->add_option("--csv", csv_path, "Input CSV")->required();
  fit->add_option("--t-col", t_col, "Time column index");
  fit->add_option("--value-col", v_col, "Value column index");
  fit->add_option("--t-min", t_min, "Window start");
  fit->add_option("--t-max", t_max, "Window end");

  auto* suite = app.add_subcommand("theorem-suite", "Canned run feeding every acceptance table");
  suite->add_option("--out", out, "Output directory");
  suite->add_option("--seed", seed, "Seed")->each([&](const std::string&) { seed_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what());
  }

  try {
    auto load = [&] {
      kp::harness::ExperimentConfig cfg = kp::harness::load_experiment_config(config_path);
      if (seed_given) cfg.seed = seed;
      return cfg;
    };
    if (*evolve) {
      const auto cfg = load();
      const fs::path dir = prepare_out(out);
      kp::write_trajectory(kp::harness::run_trajectory(cfg), dir);
    } else if (*run) {
      kp::harness::run_experiment(load(), out);
    } else if (*suite) {
      auto cfg = kp::harness::theorem_suite_config();
      if (seed_given) cfg.seed = seed;
      kp::harness::run_experiment(cfg, out);
    } else if (*norms) {
      kp::harness::write_norms(kp::read_trajectory(traj_dir), prepare_out(out));
    } else if (*decompose) {
      kp::harness::write_decompose(kp::read_trajectory(traj_dir),
                                   {{"times", times_json(times)}, {"delta", delta}, {"width", width}},
                                   prepare_out(out));
    } else if (*gamma) {
      json rj = json::array();
      for (const auto& r : rays) {
        const auto comma = r.find(',');
        if (comma == std::string::npos) return report_error("usage", "--ray expects v1,v2");
        rj.push_back({std::stod(r.substr(0, comma)), std::stod(r.substr(comma + 1))});
      }
      json params = {{"rays", rj}};
      if (!times.empty()) params["times"] = times;
      kp::harness::write_gamma(kp::read_trajectory(traj_dir), params, prepare_out(out));
    } else if (*scatter) {
      json params = {{"alpha", alpha}};
      if (!times.empty()) params["times"] = times;
      kp::harness::write_scatter(kp::read_trajectory(traj_dir), params, prepare_out(out));
    } else if (*resonances) {
      json tj = json::array();
      for (const auto& s : triads) {
        std::vector<double> v;
        std::size_t pos = 0;
        while (pos <= s.size()) {
          std::size_t end = s.find(',', pos);
          if (end == std::string::npos) end = s.size();
          v.push_back(std::stod(s.substr(pos, end - pos)));
          pos = end + 1;
        }
        if (v.size() != 4) return report_error("usage", "--triad expects xi1,xi2,eta1,branch");
        tj.push_back({v[0], v[1], v[2], static_cast<int>(v[3])});
      }
      kp::harness::write_resonances({{"triads", tj}}, prepare_out(out));
    } else if (*fit) {
      const auto table = kp::harness::read_csv(csv_path);
      kp::harness::Series s;
      for (const auto& row : table.rows) {
        if (t_col < 0 || v_col < 0 || std::size_t(std::max(t_col, v_col)) >= row.size()) {
          return report_error("usage", "column index out of range");
        }
        s.emplace_back(row[t_col], row[v_col]);
      }
      const auto f = kp::harness::fit_decay(s, t_min, t_max);
      std::cout << json{{"exponent", f.exponent},
                        {"prefactor", f.prefactor},
                        {"residual_rms", f.residual_rms},
                        {"window", {f.t_min, f.t_max}},
                        {"points", f.points}}
                       .dump()
                << '\n';
    }
  } catch (const kp::StepFailure& e) {
    std::cerr << json{{"error", "step_failure"}, {"message", e.what()}, {"time", e.time()}}.dump()
              << '\n';
    return 1;
  } catch (const kp::Error& e) {
    return report_error(std::string(kp::to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
  return 0;
}
