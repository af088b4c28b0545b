#pragma once

#include <utility>
#include <vector>

#include "kp/evolution.hpp"
#include "kp/field.hpp"

namespace kp {

struct BandProjection {
  double t = 1.0;
  double alpha = 1.0 / 6.0;

  double lower() const;  // t^{-alpha/2}
  double upper() const;  // t^{alpha/2}
  void validate() const;
};

struct BandPart {
  RealField w;
  ComplexField w_plus;
};

// Sharp x-frequency band |xi| in [lower, upper]. Throws if no lattice mode
// falls inside the band.
BandPart band_project(const RealField& u, const BandProjection& bp);

// (8/3) dx^{-3} Re(w^+ w^+_x). Rejects products with content at
// 0 < |xi| < 2 lower.
RealField compute_umod(const ComplexField& w_plus, const BandProjection& bp);
// 2 Re(w^+ w^+_x).
RealField band_product(const ComplexField& w_plus);

// L f = f_t + f_xxx - dx^{-1} f_yy given f and its time derivative.
RealField apply_linear_operator(const RealField& f, const RealField& f_t);

struct ScatterReport {
  double t = 0.0;
  double umod_l2 = 0.0;
  double scat_helper_residual = 0.0;   // ||u u_x - 2 Re(w^+ w^+_x)||
  double modscat_residual = 0.0;       // ||2 Re(w^+ w^+_x) - L u_mod||
  double back_propagated_data_drift = 0.0;  // ||S(-t) u(t) - S(-t0) u(t0)||
  bool frozen_band = false;  // a band edge crossed a lattice mode inside the stencil
};

struct ScatterOptions {
  double alpha = 1.0 / 6.0;
  double fd_step = 0.02;
};

// Needs the snapshot at t; the neighbouring states for d_t u_mod come from
// local nonlinear steps of size fd_step in both directions.
ScatterReport scattering_residuals(const Trajectory& traj, double t,
                                   const ScatterOptions& opts = {});

struct ScatterData {
  RealField u_scatter_0;
  std::vector<double> times;
  // L2 distance between successive back-propagated snapshots.
  std::vector<double> drift;
};

// Back-propagates every snapshot with t >= t_min to time 0.
ScatterData extract_scatter_data(const Trajectory& traj, double t_min = 0.0);

// ||S(-t) u(t) - S(-2t) u(2t)|| for every t whose double is also stored.
std::vector<std::pair<double, double>> doubling_drift(const Trajectory& traj);

}  // namespace kp
