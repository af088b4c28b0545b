#include "kp/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kp/error.hpp"
#include "kp/fft.hpp"
#include "kp/spectral.hpp"

namespace kp {

namespace {

constexpr double kLowContentTol = 1e-12;

std::vector<double> band_weights(const Grid2D& g, const BandProjection& bp) {
  std::vector<double> w(g.nx, 0.0);
  for (int j = 0; j < g.nx; ++j) {
    const double a = std::abs(g.xi(j));
    if (a >= bp.lower() && a <= bp.upper()) w[j] = 1.0;
  }
  return w;
}

ComplexField weight_rows(const ComplexField& f, const std::vector<double>& w) {
  const Grid2D& g = f.grid;
  ComplexField out = f;
  fft_axis(out.samples.data(), g.nx, g.ny, 0, -1);
  for (int j = 0; j < g.nx; ++j) {
    const double s = w[j] / g.nx;
    for (int k = 0; k < g.ny; ++k) out.samples[g.index(j, k)] *= s;
  }
  fft_axis(out.samples.data(), g.nx, g.ny, 0, +1);
  return out;
}

RealField umod_with_weights(const ComplexField& w_plus, const BandProjection& bp) {
  const RealField prod = band_product(w_plus);
  const Grid2D& g = prod.grid;
  SpectralField F = forward_transform(prod);
  double top = 0.0, low = 0.0;
  for (int j = 0; j < g.nx; ++j) {
    const double a = std::abs(g.xi(j));
    for (int k = 0; k < g.ny; ++k) {
      const double m = std::abs(F.at(j, k));
      top = std::max(top, m);
      if (a > 0.0 && a < 2.0 * bp.lower() * (1.0 - 1e-12)) low = std::max(low, m);
    }
  }
  if (top > 0.0 && low > kLowContentTol * top) {
    throw Error(ErrorKind::kInvalidInput,
                "compute_umod: product has content below 2*lower (relative " +
                    std::to_string(low / top) + ")");
  }
  F = apply_multiplier(F, symbol_dx_inv(g, 3));
  RealField out = inverse_transform(F);
  // Halving the product recovers Re(w^+ w^+_x).
  return (8.0 / 3.0 * 0.5) * out;
}

}  // namespace

double BandProjection::lower() const { return std::pow(t, -0.5 * alpha); }
double BandProjection::upper() const { return std::pow(t, 0.5 * alpha); }

void BandProjection::validate() const {
  if (!(t >= 1.0)) throw Error(ErrorKind::kDomain, "band projection requires t >= 1");
  if (!(alpha > 0.0)) throw Error(ErrorKind::kInvalidInput, "band projection requires alpha > 0");
}

BandPart band_project(const RealField& u, const BandProjection& bp) {
  bp.validate();
  const Grid2D& g = u.grid;
  std::vector<double> w = band_weights(g, bp);
  if (std::none_of(w.begin(), w.end(), [](double x) { return x > 0.0; })) {
    throw Error(ErrorKind::kInvalidInput,
                "band_project: no lattice x-frequency lies in [" + std::to_string(bp.lower()) +
                    ", " + std::to_string(bp.upper()) + "]");
  }
  const ComplexField wc = weight_rows(to_complex(u), w);
  std::vector<double> wp(g.nx, 0.0);
  for (int j = 0; j < g.nx; ++j) {
    if (g.is_x_nyquist(j)) {
      wp[j] = 0.5 * w[j];
    } else if (g.x_mode(j) > 0) {
      wp[j] = w[j];
    }
  }
  return BandPart{real_part(wc), weight_rows(to_complex(u), wp)};
}

RealField band_product(const ComplexField& w_plus) {
  const ComplexField wx = derivative(w_plus, 1, 0);
  RealField out = RealField::zeros(w_plus.grid, w_plus.time);
  for (std::size_t n = 0; n < out.samples.size(); ++n) {
    out.samples[n] = 2.0 * (w_plus.samples[n] * wx.samples[n]).real();
  }
  return out;
}

RealField compute_umod(const ComplexField& w_plus, const BandProjection& bp) {
  bp.validate();
  return umod_with_weights(w_plus, bp);
}

RealField apply_linear_operator(const RealField& f, const RealField& f_t) {
  require_same_grid(f.grid, f_t.grid, "apply_linear_operator");
  const Grid2D& g = f.grid;
  const Multiplier m = symbol_from(
      g,
      [](double xi, double eta) {
        if (xi == 0.0) return cplx(0.0);
        // (i xi)^3 - (i eta)^2 / (i xi) = -i xi^3 - i eta^2 / xi
        return cplx(0.0, -(xi * xi * xi + eta * eta / xi));
      },
      "dx^3 - dx^-1 dy^2");
  Multiplier mm = m;
  for (int k = 0; k < g.ny; ++k) mm.values[g.index(g.nx / 2, k)] = 0.0;
  return f_t + apply_symbol(f, mm);
}

ScatterReport scattering_residuals(const Trajectory& traj, double t, const ScatterOptions& opts) {
  if (traj.snapshots.empty()) {
    throw Error(ErrorKind::kInvalidInput, "scattering_residuals: empty trajectory");
  }
  const RealField& u = traj.at_time(t);
  const double h = opts.fd_step;
  if (!(h > 0.0) || t - 2.0 * h < 1.0) {
    throw Error(ErrorKind::kInvalidInput,
                "scattering_residuals: stencil [t - 2h, t + 2h] must stay in t >= 1");
  }
  ScatterReport rep;
  rep.t = t;
  const BandProjection bp{t, opts.alpha};
  bp.validate();

  // States at t + m h, m = -2..2.
  Integrator integ(u.grid, traj.config.dealias);
  const HalfLattice& lat = integ.lattice();
  std::vector<RealField> states(5);
  states[2] = u;
  for (int dir : {1, -1}) {
    auto s = lat.from_field(u);
    double tau = t;
    for (int m = 1; m <= 2; ++m) {
      integ.step(s, tau, dir * h);
      tau += dir * h;
      states[2 + dir * m] = lat.to_field(s, tau);
    }
  }

  // A band edge crossing a lattice mode inside the stencil makes the composed
  // quantity jump; fall back to the band frozen at t.
  const auto w_center = band_weights(u.grid, bp);
  for (int m = -2; m <= 2; ++m) {
    if (band_weights(u.grid, BandProjection{t + m * h, opts.alpha}) != w_center) {
      rep.frozen_band = true;
    }
  }
  std::vector<RealField> umods;
  for (int m = -2; m <= 2; ++m) {
    const BandProjection b = rep.frozen_band ? bp : BandProjection{t + m * h, opts.alpha};
    umods.push_back(compute_umod(band_project(states[2 + m], b).w_plus, b));
  }
  RealField ut = RealField::zeros(u.grid, t);
  for (std::size_t n = 0; n < ut.samples.size(); ++n) {
    ut.samples[n] = (-umods[4].samples[n] + 8.0 * umods[3].samples[n] -
                     8.0 * umods[1].samples[n] + umods[0].samples[n]) /
                    (12.0 * h);
  }
  const RealField l_umod = apply_linear_operator(umods[2], ut);
  const BandPart wp = band_project(u, bp);
  const RealField prod = band_product(wp.w_plus);
  const RealField uux = multiply(u, derivative(u, 1, 0));
  rep.umod_l2 = l2_norm(umods[2]);
  rep.modscat_residual = l2_norm(prod - l_umod);
  rep.scat_helper_residual = l2_norm(uux - prod);

  const SpectralField back = linear_propagate(forward_transform(u), -t);
  const RealField& first = traj.snapshots.front();
  const SpectralField back0 = linear_propagate(forward_transform(first), -first.time);
  rep.back_propagated_data_drift = l2_norm(back - back0);
  return rep;
}

ScatterData extract_scatter_data(const Trajectory& traj, double t_min) {
  std::vector<const RealField*> late;
  for (const auto& s : traj.snapshots) {
    if (s.time >= t_min) late.push_back(&s);
  }
  if (late.size() < 2) {
    throw Error(ErrorKind::kInvalidInput,
                "extract_scatter_data: needs at least two snapshots with t >= t_min");
  }
  ScatterData out;
  SpectralField prev;
  for (std::size_t n = 0; n < late.size(); ++n) {
    SpectralField b = linear_propagate(forward_transform(*late[n]), -late[n]->time);
    b.time = 0.0;
    out.times.push_back(late[n]->time);
    if (n > 0) out.drift.push_back(l2_norm(b - prev));
    prev = std::move(b);
  }
  out.u_scatter_0 = inverse_transform(prev);
  return out;
}

std::vector<std::pair<double, double>> doubling_drift(const Trajectory& traj) {
  std::vector<std::pair<double, double>> out;
  for (const auto& a : traj.snapshots) {
    if (!(a.time > 0.0)) continue;
    for (const auto& b : traj.snapshots) {
      if (std::abs(b.time - 2.0 * a.time) > 1e-9 * std::max(1.0, b.time)) continue;
      const SpectralField ba = linear_propagate(forward_transform(a), -a.time);
      const SpectralField bb = linear_propagate(forward_transform(b), -b.time);
      out.emplace_back(a.time, l2_norm(ba - bb));
    }
  }
  return out;
}

}  // namespace kp
