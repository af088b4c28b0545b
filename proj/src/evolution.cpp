#include "kp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "kp/error.hpp"
#include "kp/fft.hpp"
#include "kp/snapshot_io.hpp"

namespace kp {

namespace {

constexpr double kBlowUpFactor = 1e6;
constexpr std::size_t kPhaseCacheSlots = 4;

bool same_time(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

// ---------------------------------------------------------------- config

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorKind::kConfig, "solver.dt must be positive");
  }
  if (!(t_end > t0)) throw Error(ErrorKind::kConfig, "solver.t_end must exceed solver.t0");
  if (dt > t_end - t0 + 1e-12) {
    throw Error(ErrorKind::kConfig, "solver.dt must not exceed t_end - t0");
  }
  if (snapshot_stride < 1) {
    throw Error(ErrorKind::kConfig, "solver.snapshot_stride must be >= 1");
  }
  for (std::size_t n = 0; n < output_times.size(); ++n) {
    const double t = output_times[n];
    if (!(t > t0) || t > t_end + 1e-12) {
      throw Error(ErrorKind::kConfig, "solver.output_times must lie in (t0, t_end]");
    }
    if (n > 0 && !(t > output_times[n - 1])) {
      throw Error(ErrorKind::kConfig, "solver.output_times must be strictly increasing");
    }
  }
}

nlohmann::json to_json(const SolverConfig& c) {
  nlohmann::json j = {{"dt", c.dt},
                      {"t0", c.t0},
                      {"t_end", c.t_end},
                      {"dealias", c.dealias},
                      {"snapshot_stride", c.snapshot_stride},
                      {"linear_only", c.linear_only}};
  if (!c.output_times.empty()) j["output_times"] = c.output_times;
  if (c.linearized_background) j["linearized"] = true;
  return j;
}

SolverConfig solver_config_from_json(const nlohmann::json& j) {
  SolverConfig c;
  try {
    c.dt = j.value("dt", c.dt);
    c.t0 = j.value("t0", c.t0);
    c.t_end = j.value("t_end", c.t_end);
    c.dealias = j.value("dealias", c.dealias);
    c.snapshot_stride = j.value("snapshot_stride", c.snapshot_stride);
    c.linear_only = j.value("linear_only", c.linear_only);
    if (j.contains("output_times")) {
      c.output_times = j.at("output_times").get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("solver: ") + e.what());
  }
  c.validate();
  return c;
}

// ---------------------------------------------------------------- trajectory

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(snapshots.size());
  for (const auto& s : snapshots) t.push_back(s.time);
  return t;
}

const RealField& Trajectory::at_time(double t, double tol) const {
  for (const auto& s : snapshots) {
    if (std::abs(s.time - t) <= tol) return s;
  }
  throw Error(ErrorKind::kInvalidInput,
              "trajectory has no snapshot at t=" + std::to_string(t));
}

void write_trajectory(const Trajectory& traj, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["time_tags"] = traj.times();
  manifest["config"] = to_json(traj.config);
  manifest["provenance"] = traj.provenance;
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t n = 0; n < traj.snapshots.size(); ++n) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%05zu", n);
    write_snapshot(traj.snapshots[n], dir / name);
    files.push_back(std::string(name) + ".json");
  }
  manifest["snapshots"] = files;
  std::ofstream os(dir / "manifest.json");
  if (!os) throw Error(ErrorKind::kIo, "cannot write manifest in " + dir.string());
  os << manifest.dump(2) << '\n';
}

Trajectory read_trajectory(const std::filesystem::path& dir) {
  std::ifstream is(dir / "manifest.json");
  if (!is) throw Error(ErrorKind::kIo, "no manifest.json in " + dir.string());
  nlohmann::json manifest;
  try {
    is >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("manifest.json: ") + e.what());
  }
  Trajectory traj;
  traj.config = solver_config_from_json(manifest.value("config", nlohmann::json::object()));
  traj.provenance = manifest.value("provenance", nlohmann::json::object());
  for (const auto& name : manifest.at("snapshots")) {
    traj.snapshots.push_back(read_snapshot(dir / name.get<std::string>()));
  }
  return traj;
}

// ---------------------------------------------------------------- lattice

HalfLattice::HalfLattice(const Grid2D& g, bool dealias)
    : grid_(g), nh_(g.ny / 2 + 1), dealias_(dealias) {
  g.validate();
  const std::size_t n = static_cast<std::size_t>(g.nx) * nh_;
  omega_.assign(n, 0.0);
  nl_factor_.assign(n, 0.0);
  mask_.assign(n, 1.0);
  coord_phase_.assign(n, 0.0);
  for (int j = 0; j < g.nx; ++j) {
    const int mx = g.x_mode(j);
    const double xi = g.xi(j);
    for (int k = 0; k < nh_; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j) * nh_ + k;
      const int my = g.y_mode(k);
      const double eta = g.eta(k);
      if (dealias && !(3 * std::abs(mx) < g.nx && 3 * std::abs(my) < g.ny)) mask_[idx] = 0.0;
      if (mx != 0 && !g.is_x_nyquist(j)) {
        omega_[idx] = dispersion_omega(xi, eta);
        nl_factor_[idx] = cplx(0.0, -xi) * mask_[idx];
      }
      coord_phase_[idx] = std::polar(1.0, -(xi * g.x_start() + eta * g.y_start()));
    }
  }
}

std::vector<cplx> HalfLattice::from_field(const RealField& u) const {
  require_same_grid(u.grid, grid_, "HalfLattice::from_field");
  std::vector<cplx> s(size());
  shared_fft(grid_.nx, grid_.ny).r2c(u.samples.data(), s.data());
  const double inv_n = 1.0 / static_cast<double>(grid_.size());
  for (auto& v : s) v *= inv_n;
  for (int k = 0; k < nh_; ++k) s[k] = 0.0;
  return s;
}

std::vector<cplx> HalfLattice::from_spectral(const SpectralField& F) const {
  require_same_grid(F.grid, grid_, "HalfLattice::from_spectral");
  std::vector<cplx> s(size());
  for (int j = 1; j < grid_.nx; ++j) {
    for (int k = 0; k < nh_; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j) * nh_ + k;
      s[idx] = F.at(j, k) * std::conj(coord_phase_[idx]);
    }
  }
  return s;
}

RealField HalfLattice::to_field(const std::vector<cplx>& s, double time) const {
  RealField u = RealField::zeros(grid_, time);
  shared_fft(grid_.nx, grid_.ny).c2r(s.data(), u.samples.data());
  return u;
}

SpectralField HalfLattice::to_spectral(const std::vector<cplx>& s, double time) const {
  SpectralField F = SpectralField::zeros(grid_, time);
  const Grid2D& g = grid_;
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < g.ny; ++k) {
      cplx raw;
      if (k < nh_) {
        raw = s[static_cast<std::size_t>(j) * nh_ + k];
      } else {
        raw = std::conj(s[static_cast<std::size_t>(g.x_partner(j)) * nh_ + g.y_partner(k)]);
      }
      F.at(j, k) = raw * std::polar(1.0, -(g.xi(j) * g.x_start() + g.eta(k) * g.y_start()));
    }
  }
  return F;
}

std::vector<cplx> HalfLattice::phase(double dt) const {
  std::vector<cplx> e(size());
  for (std::size_t n = 0; n < e.size(); ++n) e[n] = std::polar(1.0, omega_[n] * dt);
  return e;
}

double HalfLattice::l2(const std::vector<cplx>& s) const {
  double sum = 0.0;
  for (int j = 0; j < grid_.nx; ++j) {
    for (int k = 0; k < nh_; ++k) {
      const double w = (k == 0 || k == grid_.ny / 2) ? 1.0 : 2.0;
      sum += w * std::norm(s[static_cast<std::size_t>(j) * nh_ + k]);
    }
  }
  return std::sqrt(sum * grid_.lx * grid_.ly);
}

// ---------------------------------------------------------------- background

Background::Background(const Grid2D& g, bool dealias)
    : lattice_(std::make_shared<HalfLattice>(g, dealias)) {}

Background Background::from_trajectory(const Trajectory& traj) {
  if (traj.snapshots.empty()) {
    throw Error(ErrorKind::kInvalidInput, "background trajectory is empty");
  }
  Background bg(traj.snapshots.front().grid, traj.config.dealias);
  for (const auto& s : traj.snapshots) {
    bg.append_state(s.time, bg.lattice_->from_field(s));
  }
  return bg;
}

void Background::append(const SpectralField& u) {
  append_state(u.time, lattice_->from_spectral(u));
}

void Background::append_state(double t, const std::vector<cplx>& s) {
  if (!times_.empty() && !(t > times_.back())) {
    throw Error(ErrorKind::kInvalidInput, "background snapshots must have increasing times");
  }
  std::vector<cplx> r = lattice_->phase(-t);
  for (std::size_t n = 0; n < r.size(); ++n) r[n] *= s[n];
  times_.push_back(t);
  rotated_.push_back(std::move(r));
}

void Background::drop_before(double t) {
  std::size_t i = 0;
  while (i + 1 < times_.size() && times_[i + 1] <= t) ++i;
  // Keep one snapshot before t for the cubic stencil.
  const std::size_t keep_from = i > 0 ? i - 1 : 0;
  times_.erase(times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(keep_from));
  rotated_.erase(rotated_.begin(), rotated_.begin() + static_cast<std::ptrdiff_t>(keep_from));
}

bool Background::covers(double t0, double t1) const {
  if (times_.empty()) return false;
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  return (lo >= times_.front() || same_time(lo, times_.front())) &&
         (hi <= times_.back() || same_time(hi, times_.back()));
}

double Background::first_time() const {
  if (times_.empty()) throw Error(ErrorKind::kInvalidInput, "background is empty");
  return times_.front();
}

double Background::last_time() const {
  if (times_.empty()) throw Error(ErrorKind::kInvalidInput, "background is empty");
  return times_.back();
}

std::vector<cplx> Background::state_at(double t) const {
  if (!covers(t, t)) {
    throw Error(ErrorKind::kInvalidInput,
                "background gap: no snapshots around t=" + std::to_string(t));
  }
  const std::size_t n = times_.size();
  std::size_t i = 0;
  while (i + 1 < n && times_[i + 1] <= t) ++i;
  std::size_t hi = std::min(n - 1, (i > 0 ? i - 1 : 0) + 3);
  std::size_t lo = hi >= 3 ? hi - 3 : 0;
  std::vector<cplx> acc(lattice_->size(), 0.0);
  for (std::size_t a = lo; a <= hi; ++a) {
    double w = 1.0;
    for (std::size_t b = lo; b <= hi; ++b) {
      if (b != a) w *= (t - times_[b]) / (times_[a] - times_[b]);
    }
    if (w == 0.0) continue;
    const auto& r = rotated_[a];
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += w * r[m];
  }
  const std::vector<cplx> e = lattice_->phase(t);
  for (std::size_t m = 0; m < acc.size(); ++m) acc[m] *= e[m];
  return acc;
}

SpectralField Background::at(double t) const {
  return lattice_->to_spectral(state_at(t), t);
}

// ---------------------------------------------------------------- integrator

Integrator::Integrator(const Grid2D& g, bool dealias)
    : lattice_(std::make_shared<HalfLattice>(g, dealias)),
      scratch_(lattice_->size()),
      ra_(g.size()),
      rb_(g.size()) {}

const Integrator::PhaseCache& Integrator::phases(double h) {
  for (const auto& c : cache_) {
    if (c.h == h) return c;
  }
  if (cache_.size() >= kPhaseCacheSlots) cache_.erase(cache_.begin());
  cache_.push_back(PhaseCache{h, lattice_->phase(h), lattice_->phase(0.5 * h)});
  return cache_.back();
}

void Integrator::to_samples(const std::vector<cplx>& s, std::vector<double>& out) {
  const auto& mask = lattice_->mask();
  if (lattice_->dealias()) {
    for (std::size_t n = 0; n < s.size(); ++n) scratch_[n] = s[n] * mask[n];
  } else {
    std::copy(s.begin(), s.end(), scratch_.begin());
  }
  const Grid2D& g = lattice_->grid();
  shared_fft(g.nx, g.ny).c2r(scratch_.data(), out.data());
}

std::vector<cplx> Integrator::nonlinear(const std::vector<cplx>& s) {
  to_samples(s, ra_);
  for (double& v : ra_) v = 0.5 * v * v;
  const Grid2D& g = lattice_->grid();
  std::vector<cplx> out(lattice_->size());
  shared_fft(g.nx, g.ny).r2c(ra_.data(), out.data());
  const double inv_n = 1.0 / static_cast<double>(g.size());
  const auto& f = lattice_->nonlinear_factor();
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= f[n] * inv_n;
  return out;
}

std::vector<cplx> Integrator::bilinear(const std::vector<cplx>& u, const std::vector<cplx>& w) {
  to_samples(u, ra_);
  to_samples(w, rb_);
  for (std::size_t n = 0; n < ra_.size(); ++n) ra_[n] *= rb_[n];
  const Grid2D& g = lattice_->grid();
  std::vector<cplx> out(lattice_->size());
  shared_fft(g.nx, g.ny).r2c(ra_.data(), out.data());
  const double inv_n = 1.0 / static_cast<double>(g.size());
  const auto& f = lattice_->nonlinear_factor();
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= f[n] * inv_n;
  return out;
}

void Integrator::propagate_linear(std::vector<cplx>& s, double dt) const {
  const auto e = lattice_->phase(dt);
  for (std::size_t n = 0; n < s.size(); ++n) s[n] *= e[n];
}

namespace {

// Shared IF-RK4 stage logic; rhs(stage, v) evaluates the nonlinear part at
// stage 0 (t), 1 and 2 (t + h/2) or 3 (t + h).
template <class Rhs>
void ifrk4(std::vector<cplx>& v, double h, const std::vector<cplx>& e,
           const std::vector<cplx>& e2, Rhs&& rhs) {
  const std::size_t n = v.size();
  const auto k1 = rhs(0, v);
  std::vector<cplx> tmp(n);
  for (std::size_t m = 0; m < n; ++m) tmp[m] = e2[m] * (v[m] + 0.5 * h * k1[m]);
  const auto k2 = rhs(1, tmp);
  for (std::size_t m = 0; m < n; ++m) tmp[m] = e2[m] * v[m] + 0.5 * h * k2[m];
  const auto k3 = rhs(2, tmp);
  for (std::size_t m = 0; m < n; ++m) tmp[m] = e[m] * v[m] + h * e2[m] * k3[m];
  const auto k4 = rhs(3, tmp);
  for (std::size_t m = 0; m < n; ++m) {
    v[m] = e[m] * v[m] +
           (h / 6.0) * (e[m] * k1[m] + 2.0 * e2[m] * (k2[m] + k3[m]) + k4[m]);
  }
}

}  // namespace

void Integrator::step(std::vector<cplx>& s, double t, double h) {
  const double before = lattice_->l2(s);
  const auto& pc = phases(h);
  ifrk4(s, h, pc.full, pc.half,
        [this](int, const std::vector<cplx>& v) { return nonlinear(v); });
  const double after = lattice_->l2(s);
  if (!std::isfinite(after) || (before > 0.0 && after > kBlowUpFactor * before)) {
    throw StepFailure(t, "norm blow-up in step starting at t=" + std::to_string(t));
  }
}

void Integrator::step_linearized(std::vector<cplx>& w, const Background& bg, double t,
                                 double h) {
  if (!bg.covers(t, t + h)) {
    throw Error(ErrorKind::kInvalidInput,
                "background gap: snapshots do not cover [" + std::to_string(t) + ", " +
                    std::to_string(t + h) + "]");
  }
  require_same_grid(bg.lattice().grid(), lattice_->grid(), "step_linearized");
  const auto u0 = bg.state_at(t);
  const auto um = bg.state_at(t + 0.5 * h);
  const auto u1 = bg.state_at(t + h);
  const double before = lattice_->l2(w);
  const auto& pc = phases(h);
  ifrk4(w, h, pc.full, pc.half, [&](int stage, const std::vector<cplx>& v) {
    const auto& u = stage == 0 ? u0 : (stage == 3 ? u1 : um);
    return bilinear(u, v);
  });
  const double after = lattice_->l2(w);
  if (!std::isfinite(after) || (before > 0.0 && after > kBlowUpFactor * before)) {
    throw StepFailure(t, "norm blow-up in linearized step at t=" + std::to_string(t));
  }
}

// ---------------------------------------------------------------- public ops

SpectralField linear_propagate(const SpectralField& F, double dt) {
  SpectralField out = apply_multiplier(F, symbol_linear_phase(F.grid, dt));
  out.time = F.time + dt;
  return out;
}

RealField nonlinear_term(const RealField& u, bool dealias) {
  Integrator integ(u.grid, dealias);
  const auto s = integ.lattice().from_field(u);
  return integ.lattice().to_field(integ.nonlinear(s), u.time);
}

SpectralField step_nonlinear(const SpectralField& u, double dt, bool dealias) {
  Integrator integ(u.grid, dealias);
  auto s = integ.lattice().from_spectral(u);
  integ.step(s, u.time, dt);
  return integ.lattice().to_spectral(s, u.time + dt);
}

SpectralField step_linearized(const SpectralField& w, const Background& bg, double dt,
                              bool dealias) {
  Integrator integ(w.grid, dealias);
  auto s = integ.lattice().from_spectral(w);
  integ.step_linearized(s, bg, w.time, dt);
  return integ.lattice().to_spectral(s, w.time + dt);
}

// ---------------------------------------------------------------- symmetries

namespace {

RealField galilean(const RealField& u, double c) {
  const Grid2D& g = u.grid;
  const double m = c * g.ly / g.lx;
  if (!std::isfinite(m) || std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, std::abs(m))) {
    throw Error(ErrorKind::kInvalidInput,
                "galilean boost: c*Ly must be an integer multiple of Lx (c*Ly/Lx = " +
                    std::to_string(m) + ")");
  }
  if (c == 0.0) return u;
  const double t = u.time;
  std::vector<cplx> data(u.samples.begin(), u.samples.end());
  // Row shear x -> x - c y - c^2 t on the rows y' = y - 2ct.
  fft_axis(data.data(), g.nx, g.ny, 0, -1);
  for (int j = 0; j < g.nx; ++j) {
    const double xi = g.xi(j);
    for (int l = 0; l < g.ny; ++l) {
      cplx& d = data[g.index(j, l)];
      d = g.is_x_nyquist(j) ? cplx(0.0)
                            : d * std::polar(1.0 / g.nx, -xi * (c * g.y(l) + c * c * t));
    }
  }
  fft_axis(data.data(), g.nx, g.ny, 0, +1);
  if (t != 0.0) {
    fft_axis(data.data(), g.nx, g.ny, 1, -1);
    for (int i = 0; i < g.nx; ++i) {
      for (int k = 0; k < g.ny; ++k) {
        cplx& d = data[g.index(i, k)];
        d = g.is_y_nyquist(k) ? cplx(0.0)
                              : d * std::polar(1.0 / g.ny, -g.eta(k) * 2.0 * c * t);
      }
    }
    fft_axis(data.data(), g.nx, g.ny, 1, +1);
  }
  RealField out = RealField::zeros(g, t);
  for (std::size_t n = 0; n < data.size(); ++n) out.samples[n] = data[n].real();
  return out;
}

RealField scaling(const RealField& u, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::kInvalidInput, "scaling symmetry requires lambda > 0");
  }
  const Grid2D& g = u.grid;
  const double l2 = lambda * lambda;
  RealField out = u;
  out.grid = Grid2D::make(g.nx, g.ny, g.lx / lambda, g.ly / l2, g.x0 / lambda, g.y0 / l2);
  for (double& v : out.samples) v *= l2;
  out.time = u.time / (l2 * lambda);
  return out;
}

RealField reversal(const RealField& u, bool flip_y) {
  const Grid2D& g = u.grid;
  RealField out = u;
  out.grid.x0 = -g.x0;
  if (flip_y) out.grid.y0 = -g.y0;
  out.time = -u.time;
  for (int i = 0; i < g.nx; ++i) {
    const int si = (g.nx - i) % g.nx;
    for (int j = 0; j < g.ny; ++j) {
      const int sj = flip_y ? (g.ny - j) % g.ny : j;
      out.at(i, j) = u.at(si, sj);
    }
  }
  return out;
}

}  // namespace

RealField apply_symmetry(const RealField& u, SymmetryKind kind, double param) {
  u.grid.validate();
  switch (kind) {
    case SymmetryKind::kScaling: return scaling(u, param);
    case SymmetryKind::kGalilean: return galilean(u, param);
    case SymmetryKind::kReversal: return reversal(u, param < 0.0);
  }
  throw Error(ErrorKind::kInvalidInput, "unknown symmetry");
}

// ---------------------------------------------------------------- drivers

namespace {

std::vector<double> output_schedule(const SolverConfig& cfg) {
  std::vector<double> targets;
  if (!cfg.output_times.empty()) {
    targets = cfg.output_times;
  } else {
    const double span = cfg.snapshot_stride * cfg.dt;
    for (int k = 1;; ++k) {
      const double t = cfg.t0 + k * span;
      if (t >= cfg.t_end || same_time(t, cfg.t_end)) break;
      targets.push_back(t);
    }
  }
  if (targets.empty() || !same_time(targets.back(), cfg.t_end)) targets.push_back(cfg.t_end);
  return targets;
}

int steps_for(double span, double dt) {
  return std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
}

}  // namespace

Trajectory evolve(const RealField& u0, const SolverConfig& cfg,
                  const nlohmann::json& provenance) {
  cfg.validate();
  require_finite(u0, "evolve");
  Trajectory traj;
  traj.config = cfg;
  traj.provenance = provenance;
  Integrator integ(u0.grid, cfg.dealias);
  const HalfLattice& lat = integ.lattice();
  auto s = lat.from_field(u0);
  std::unique_ptr<Background> bg;
  if (cfg.linearized_background) {
    bg = std::make_unique<Background>(Background::from_trajectory(*cfg.linearized_background));
    require_same_grid(bg->lattice().grid(), u0.grid, "evolve (linearized)");
  }
  double t = cfg.t0;
  traj.snapshots.push_back(lat.to_field(s, t));
  for (double target : output_schedule(cfg)) {
    const int n = steps_for(target - t, cfg.dt);
    const double h = (target - t) / n;
    for (int m = 0; m < n; ++m) {
      if (bg) {
        integ.step_linearized(s, *bg, t, h);
      } else if (cfg.linear_only) {
        integ.propagate_linear(s, h);
      } else {
        integ.step(s, t, h);
      }
      t = (m + 1 == n) ? target : t + h;
    }
    traj.snapshots.push_back(lat.to_field(s, t));
  }
  return traj;
}

void evolve_coupled(const RealField& u0, const RealField& w0, const SolverConfig& cfg,
                    const CoupledObserver& observer) {
  cfg.validate();
  require_same_grid(u0.grid, w0.grid, "evolve_coupled");
  Integrator integ(u0.grid, cfg.dealias);
  const HalfLattice& lat = integ.lattice();
  Background bg(u0.grid, cfg.dealias);
  auto su = lat.from_field(u0);
  auto sw = lat.from_field(w0);
  const int n = steps_for(cfg.t_end - cfg.t0, cfg.dt);
  const double h = (cfg.t_end - cfg.t0) / n;
  auto time_of = [&](int m) { return m == n ? cfg.t_end : cfg.t0 + m * h; };
  bg.append_state(cfg.t0, su);
  int u_steps = 0;
  auto advance_u_to = [&](int m) {
    while (u_steps < std::min(m, n)) {
      integ.step(su, time_of(u_steps), h);
      ++u_steps;
      bg.append_state(time_of(u_steps), su);
    }
  };
  advance_u_to(2);
  observer(cfg.t0, lat.to_spectral(lat.from_field(u0), cfg.t0), lat.to_spectral(sw, cfg.t0));
  for (int m = 0; m < n; ++m) {
    advance_u_to(m + 3);
    integ.step_linearized(sw, bg, time_of(m), h);
    const double t1 = time_of(m + 1);
    observer(t1, bg.at(t1), lat.to_spectral(sw, t1));
    bg.drop_before(time_of(m));
  }
}

}  // namespace kp
