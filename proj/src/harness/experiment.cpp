#include "kp/harness/experiment.hpp"

#include <cmath>
#include <fstream>
#include <future>

#include "kp/decomposition.hpp"
#include "kp/error.hpp"
#include "kp/geometry.hpp"
#include "kp/harness/csv.hpp"
#include "kp/harness/fit.hpp"
#include "kp/scattering.hpp"
#include "kp/snapshot_io.hpp"
#include "kp/vector_fields.hpp"
#include "kp/wavepacket.hpp"

namespace kp::harness {

namespace fs = std::filesystem;

namespace {

std::vector<double> times_param(const nlohmann::json& params, const Trajectory& traj) {
  if (params.contains("times")) return params.at("times").get<std::vector<double>>();
  // Ray-based diagnostics are undefined at t = 0.
  std::vector<double> out;
  for (double t : traj.times())
    if (t > 0.0) out.push_back(t);
  return out;
}

void write_json(const nlohmann::json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace

Trajectory run_trajectory(const ExperimentConfig& cfg) {
  cfg.validate();
  RealField u0 = make_initial_data(cfg.grid, cfg.initial, cfg.seed);
  u0.time = cfg.solver.t0;
  nlohmann::json prov = {{"config_hash", config_hash(cfg)}, {"version", kToolkitVersion}};
  return evolve(u0, cfg.solver, prov);
}

std::vector<std::string> write_norms(const Trajectory& traj, const fs::path& dir) {
  CsvTable t;
  t.header = {"t [time]", "l2 [amplitude*area^0.5]", "sup_u [amplitude]", "sup_ux [amplitude/length]",
              "x_norm [X]", "x_l2 [X]", "x_uxxx [X]", "x_ly2dxu [X]", "x_s0u [X]", "leakage [fraction]"};
  for (const auto& s : traj.snapshots) {
    const XNormReport x = x_norm(s, s.time);
    t.add_row({s.time, l2_norm(s), sup_norm(s), sup_norm(derivative(s, 1, 0)), x.total, x.l2,
               x.uxxx, x.ly2dxu, x.s0u, x.leakage});
  }
  write_csv(t, dir / "norms.csv");
  return {"norms.csv"};
}

std::vector<std::string> write_sup_norms(const Trajectory& traj, const nlohmann::json& params,
                                         const fs::path& dir) {
  const Series su = sup_norm_series(traj, SupQuantity::kU);
  const Series sux = sup_norm_series(traj, SupQuantity::kUx);
  CsvTable t;
  t.header = {"t [time]", "sup_u [amplitude]", "sup_ux [amplitude/length]"};
  for (std::size_t n = 0; n < su.size(); ++n) t.add_row({su[n].first, su[n].second, sux[n].second});
  write_csv(t, dir / "sup_norms.csv");

  const double t_min = params.value("t_min", 0.0);
  CsvTable f;
  f.header = {"quantity [0=u,1=ux]", "exponent [1]", "prefactor [amplitude]", "residual_rms [log]",
              "t_min [time]", "t_max [time]"};
  int q = 0;
  for (const Series* s : {&su, &sux}) {
    Series window;
    for (const auto& p : *s) {
      if (p.first >= t_min && p.second > 0.0) window.push_back(p);
    }
    if (window.size() >= 5) {
      const DecayFit fit = fit_decay(window);
      f.add_row({double(q), fit.exponent, fit.prefactor, fit.residual_rms, fit.t_min, fit.t_max});
    }
    ++q;
  }
  write_csv(f, dir / "sup_norm_fits.csv");
  return {"sup_norms.csv", "sup_norm_fits.csv"};
}

std::vector<std::string> write_decompose(const Trajectory& traj, const nlohmann::json& params,
                                         const fs::path& dir) {
  const double delta = params.value("delta", 1.0);
  const double width = params.value("width", 0.5);
  CsvTable bins, lambdas, cors;
  bins.header = {"t [time]", "v_lo [velocity]", "v_hi [velocity]", "points [count]",
                 "ratio_hyp [1]", "ratio_hyp_x [1]", "ratio_ell [1]", "ratio_ell_x [1]",
                 "sup_hyp [amplitude]", "sup_hyp_x [amplitude/length]", "sup_ell [amplitude]",
                 "sup_ell_x [amplitude/length]"};
  lambdas.header = {"t [time]", "lambda [1/length]", "hyperbolic [bool]", "lz_hyp [L2]",
                    "lz_hyp_rhs [L2]", "ell_weighted [L2]", "ell_rhs [L2]"};
  cors.header = {"t [time]", "x_norm [X]", "max_ratio [1]", "cor_lz [L2]", "cor_lz_rhs [L2]",
                 "cor_ly [L2]", "cor_ly_rhs [L2]"};
  for (double t : times_param(params, traj)) {
    const PointwiseProfile p = pointwise_profile(traj.at_time(t), t, delta, width);
    for (const auto& b : p.bins) {
      bins.add_row({t, b.v_lo, b.v_hi, double(b.points), b.ratio_hyp, b.ratio_hyp_x, b.ratio_ell,
                    b.ratio_ell_x, b.sup_hyp, b.sup_hyp_x, b.sup_ell, b.sup_ell_x});
    }
    for (const auto& l : p.lambdas) {
      lambdas.add_row({t, l.lambda, l.hyperbolic ? 1.0 : 0.0, l.lz_hyp, l.lz_hyp_rhs,
                       l.ell_weighted, l.ell_rhs});
    }
    cors.add_row({t, p.x_norm, p.max_ratio(), p.cor_lz, p.cor_lz_rhs, p.cor_ly, p.cor_ly_rhs});
  }
  write_csv(bins, dir / "decompose_bins.csv");
  write_csv(lambdas, dir / "decompose_lambdas.csv");
  write_csv(cors, dir / "decompose_summary.csv");
  return {"decompose_bins.csv", "decompose_lambdas.csv", "decompose_summary.csv"};
}

std::vector<std::string> write_gamma(const Trajectory& traj, const nlohmann::json& params,
                                     const fs::path& dir) {
  CsvTable g, gd, rec;
  g.header = {"v1 [velocity]", "v2 [velocity]", "t [time]", "re_gamma [amplitude]",
              "im_gamma [amplitude]", "abs_gamma [amplitude]"};
  gd.header = {"v1 [velocity]", "v2 [velocity]", "t [time]", "abs_gamma_dot [amplitude/time]"};
  rec.header = {"v1 [velocity]", "v2 [velocity]", "t [time]", "reconstruction_error [amplitude/length]",
                "reconstruction_envelope [amplitude/length]"};
  const std::vector<double> times = times_param(params, traj);
  for (const auto& r : params.at("rays")) {
    GammaSeries series;
    series.vel = {r[0].get<double>(), r[1].get<double>()};
    for (double t : times) {
      const PacketParams p{series.vel, t};
      const RealField& u = traj.at_time(t);
      const cplx gm = gamma(u, p);
      series.samples.push_back({t, gm});
      g.add_row({series.vel.v1, series.vel.v2, t, gm.real(), gm.imag(), std::abs(gm)});
      rec.add_row({series.vel.v1, series.vel.v2, t, reconstruction_error(u, p),
                   reconstruction_envelope(u, p)});
    }
    if (series.samples.size() >= 3) {
      for (const auto& [t, d] : gamma_dot_series(series)) {
        gd.add_row({series.vel.v1, series.vel.v2, t, d});
      }
    }
  }
  write_csv(g, dir / "gamma.csv");
  write_csv(gd, dir / "gamma_dot.csv");
  write_csv(rec, dir / "reconstruction.csv");
  return {"gamma.csv", "gamma_dot.csv", "reconstruction.csv"};
}

std::vector<std::string> write_resonances(const nlohmann::json& params, const fs::path& dir) {
  CsvTable t;
  t.header = {"xi1 [1/length]", "eta1 [1/length]", "xi2 [1/length]", "eta2 [1/length]",
              "xi3 [1/length]", "eta3 [1/length]", "omega1 [1/time]", "omega2 [1/time]",
              "omega3 [1/time]", "residual [1]", "defect [1]"};
  for (const auto& e : params.value("triads", nlohmann::json::array())) {
    const ResonantTriad tr = resonant_triad(e[0].get<double>(), e[1].get<double>(),
                                            e[2].get<double>(), e[3].get<int>());
    t.add_row({tr.k1.xi, tr.k1.eta, tr.k2.xi, tr.k2.eta, tr.k3.xi, tr.k3.eta,
               dispersion_omega(tr.k1.xi, tr.k1.eta), dispersion_omega(tr.k2.xi, tr.k2.eta),
               dispersion_omega(tr.k3.xi, tr.k3.eta), tr.residual, triad_defect(tr)});
  }
  write_csv(t, dir / "resonances.csv");
  return {"resonances.csv"};
}

std::vector<std::string> write_scatter(const Trajectory& traj, const nlohmann::json& params,
                                       const fs::path& dir) {
  ScatterOptions opts;
  opts.alpha = params.value("alpha", opts.alpha);
  opts.fd_step = params.value("fd_step", opts.fd_step);
  const std::vector<double> times = times_param(params, traj);
  CsvTable t;
  t.header = {"t [time]", "umod_l2 [L2]", "scat_helper_residual [L2]", "modscat_residual [L2]",
              "back_propagated_data_drift [L2]", "frozen_band [bool]"};
  for (double tau : times) {
    const ScatterReport r = scattering_residuals(traj, tau, opts);
    t.add_row({r.t, r.umod_l2, r.scat_helper_residual, r.modscat_residual,
               r.back_propagated_data_drift, r.frozen_band ? 1.0 : 0.0});
  }
  write_csv(t, dir / "scatter.csv");

  const double t_min = times.empty() ? 0.0 : times.front();
  const ScatterData sd = extract_scatter_data(traj, t_min);
  CsvTable d;
  d.header = {"t_from [time]", "t_to [time]", "drift [L2]"};
  for (std::size_t n = 0; n < sd.drift.size(); ++n) {
    d.add_row({sd.times[n], sd.times[n + 1], sd.drift[n]});
  }
  write_csv(d, dir / "scatter_drift.csv");
  CsvTable dd;
  dd.header = {"t [time]", "doubling_drift [L2]"};
  for (const auto& [tau, v] : doubling_drift(traj)) {
    if (tau >= t_min) dd.add_row({tau, v});
  }
  write_csv(dd, dir / "scatter_doubling.csv");
  write_snapshot(sd.u_scatter_0, dir / "u_scatter_0");
  return {"scatter.csv", "scatter_drift.csv", "scatter_doubling.csv", "u_scatter_0.json",
          "u_scatter_0.bin"};
}

std::vector<std::string> run_diagnostic(const DiagnosticSpec& d, const Trajectory& traj,
                                        const fs::path& dir) {
  if (d.kind == "norms") return write_norms(traj, dir);
  if (d.kind == "sup_norms") return write_sup_norms(traj, d.params, dir);
  if (d.kind == "decompose") return write_decompose(traj, d.params, dir);
  if (d.kind == "gamma") return write_gamma(traj, d.params, dir);
  if (d.kind == "resonances") return write_resonances(d.params, dir);
  if (d.kind == "scatter") return write_scatter(traj, d.params, dir);
  throw Error(ErrorKind::kConfig, "unknown diagnostic '" + d.kind + "'");
}

fs::path run_experiment(const ExperimentConfig& cfg, const fs::path& out) {
  cfg.validate();
  const fs::path dir = out.empty() ? fs::path(cfg.output_dir) : out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
  write_json(to_json(cfg), dir / "config.json");

  const Trajectory traj = run_trajectory(cfg);
  write_trajectory(traj, dir / "trajectory");

  // Diagnostics only read the trajectory and write disjoint files.
  std::vector<std::future<std::vector<std::string>>> jobs;
  for (const auto& d : cfg.diagnostics) {
    jobs.push_back(std::async(std::launch::async, [&d, &traj, &dir] {
      return run_diagnostic(d, traj, dir);
    }));
  }
  nlohmann::json files = nlohmann::json::array({"config.json", "trajectory/manifest.json"});
  for (auto& j : jobs) {
    for (const auto& f : j.get()) files.push_back(f);
  }
  write_json({{"version", kToolkitVersion},
              {"config_hash", config_hash(cfg)},
              {"seed", cfg.seed},
              {"files", files}},
             dir / "manifest.json");
  return dir;
}

}  // namespace kp::harness
