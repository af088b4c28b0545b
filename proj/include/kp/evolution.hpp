#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include <json.hpp>

#include "kp/field.hpp"
#include "kp/spectral.hpp"

namespace kp {

struct Trajectory;

struct SolverConfig {
  double dt = 0.05;
  double t0 = 0.0;
  double t_end = 1.0;
  bool dealias = true;
  int snapshot_stride = 1;
  // When non-empty, snapshots are stored exactly at these times instead of
  // every snapshot_stride steps; the step is shortened to land on each one.
  std::vector<double> output_times;
  bool linear_only = false;
  // Evolve the linearized equation around this background instead of KP-I.
  std::shared_ptr<const Trajectory> linearized_background;

  void validate() const;
};

nlohmann::json to_json(const SolverConfig& c);
SolverConfig solver_config_from_json(const nlohmann::json& j);

struct Trajectory {
  std::vector<RealField> snapshots;
  SolverConfig config;
  nlohmann::json provenance = nlohmann::json::object();

  std::vector<double> times() const;
  // Snapshot whose time matches t within tol; throws kInvalidInput otherwise.
  const RealField& at_time(double t, double tol = 1e-9) const;
};

void write_trajectory(const Trajectory& traj, const std::filesystem::path& dir);
Trajectory read_trajectory(const std::filesystem::path& dir);

// Wavenumber tables on the r2c half lattice (nx x (ny/2+1)). Half-lattice
// states hold the raw DFT of the samples divided by nx*ny, with no
// coordinate phase.
class HalfLattice {
 public:
  HalfLattice(const Grid2D& g, bool dealias);

  const Grid2D& grid() const { return grid_; }
  int nh() const { return nh_; }
  std::size_t size() const { return omega_.size(); }
  bool dealias() const { return dealias_; }
  const std::vector<double>& omega() const { return omega_; }
  // -i xi on retained modes, 0 on xi = 0, the x-Nyquist row and (if
  // dealiasing) outside the 2/3 mask.
  const std::vector<cplx>& nonlinear_factor() const { return nl_factor_; }
  const std::vector<double>& mask() const { return mask_; }

  std::vector<cplx> from_field(const RealField& u) const;
  std::vector<cplx> from_spectral(const SpectralField& F) const;
  RealField to_field(const std::vector<cplx>& s, double time) const;
  SpectralField to_spectral(const std::vector<cplx>& s, double time) const;
  // exp(i omega dt) per entry.
  std::vector<cplx> phase(double dt) const;
  double l2(const std::vector<cplx>& s) const;

 private:
  Grid2D grid_;
  int nh_;
  bool dealias_;
  std::vector<double> omega_;
  std::vector<cplx> nl_factor_;
  std::vector<double> mask_;
  std::vector<cplx> coord_phase_;
};

// Snapshots of a background solution u, interpolated cubically in time after
// removing the linear phase.
class Background {
 public:
  Background(const Grid2D& g, bool dealias = true);
  static Background from_trajectory(const Trajectory& traj);

  void append(const SpectralField& u);
  void append_state(double t, const std::vector<cplx>& s);
  // Discards snapshots that are no longer needed to evaluate at times >= t.
  void drop_before(double t);
  bool covers(double t0, double t1) const;
  double first_time() const;
  double last_time() const;
  std::size_t count() const { return times_.size(); }

  std::vector<cplx> state_at(double t) const;
  SpectralField at(double t) const;
  const HalfLattice& lattice() const { return *lattice_; }

 private:
  std::shared_ptr<const HalfLattice> lattice_;
  std::vector<double> times_;
  std::vector<std::vector<cplx>> rotated_;
};

// Integrating-factor RK4 for KP-I and its linearization on the half lattice.
class Integrator {
 public:
  Integrator(const Grid2D& g, bool dealias = true);

  const HalfLattice& lattice() const { return *lattice_; }
  // One step of size h (may be negative) starting at time t.
  void step(std::vector<cplx>& s, double t, double h);
  void step_linearized(std::vector<cplx>& w, const Background& bg, double t, double h);
  void propagate_linear(std::vector<cplx>& s, double dt) const;
  // -d_x P(u^2/2) on the half lattice.
  std::vector<cplx> nonlinear(const std::vector<cplx>& s);
  // -d_x P(u w).
  std::vector<cplx> bilinear(const std::vector<cplx>& u, const std::vector<cplx>& w);

 private:
  struct PhaseCache {
    double h;
    std::vector<cplx> full;
    std::vector<cplx> half;
  };
  const PhaseCache& phases(double h);
  void to_samples(const std::vector<cplx>& s, std::vector<double>& out);

  std::shared_ptr<const HalfLattice> lattice_;
  std::vector<PhaseCache> cache_;
  std::vector<cplx> scratch_;
  std::vector<double> ra_, rb_;
};

SpectralField linear_propagate(const SpectralField& F, double dt);
// -d_x(u^2/2), 2/3-dealiased when requested.
RealField nonlinear_term(const RealField& u, bool dealias = true);
// dt may be negative (backward in time); blow-up raises StepFailure.
SpectralField step_nonlinear(const SpectralField& u, double dt, bool dealias = true);
// One step of w_t + w_xxx - d_x^{-1} w_yy + (u w)_x = 0.
SpectralField step_linearized(const SpectralField& w, const Background& bg, double dt,
                              bool dealias = true);

enum class SymmetryKind { kScaling, kGalilean, kReversal };

// Scaling: lambda^2 u(lambda^3 t, lambda x, lambda^2 y) by rescaling the box.
// Galilean: u(t, x - c y + c^2 t, y - 2 c t); requires c Ly / Lx integral.
// Reversal: u(-t, -x, y); a negative param also flips y.
RealField apply_symmetry(const RealField& u, SymmetryKind kind, double param);

// Evolves from u0 (taken at cfg.t0) and records snapshots. With
// cfg.linearized_background set, u0 is the initial linearized perturbation.
Trajectory evolve(const RealField& u0, const SolverConfig& cfg,
                  const nlohmann::json& provenance = nlohmann::json::object());

// Joint evolution of u and a linearized perturbation w along it, using a
// sliding background window. observer(t, u, w) sees every step.
using CoupledObserver =
    std::function<void(double, const SpectralField&, const SpectralField&)>;
void evolve_coupled(const RealField& u0, const RealField& w0, const SolverConfig& cfg,
                    const CoupledObserver& observer);

}  // namespace kp
