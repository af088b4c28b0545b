#include "kp/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kp/error.hpp"
#include "kp/spectral.hpp"

namespace kp {

namespace {

const double kSqrt3 = std::sqrt(3.0);

struct Support {
  double x_lo, x_hi, y_lo, y_hi;
};

Support packet_support(const PacketParams& p) {
  const double t = p.t;
  const double zc = p.v() * t;
  const double dz = 1.0 / p.lambda1();
  const double yc = p.vel.v2 * t;
  const double dy = 1.0 / p.lambda2();
  const double y_lo = yc - dy;
  const double y_hi = yc + dy;
  // y^2/(4t) over [y_lo, y_hi].
  const double q_hi = std::max(y_lo * y_lo, y_hi * y_hi) / (4.0 * t);
  const double q_lo = (y_lo <= 0.0 && y_hi >= 0.0) ? 0.0 : std::min(y_lo * y_lo, y_hi * y_hi) / (4.0 * t);
  return {-(zc + dz) + q_lo, -(zc - dz) + q_hi, y_lo, y_hi};
}

void require_inside(const PacketParams& p, const Grid2D& g) {
  const Support s = packet_support(p);
  const bool ok = s.x_lo >= g.x0 - 0.25 * g.lx && s.x_hi <= g.x0 + 0.25 * g.lx &&
                  s.y_lo >= g.y0 - 0.25 * g.ly && s.y_hi <= g.y0 + 0.25 * g.ly;
  if (!ok) {
    throw Error(ErrorKind::kInvalidInput,
                "packet support leaves the central half of the box at t=" + std::to_string(p.t));
  }
}

double chi_norm() {
  const double c = bump_integral();
  return 1.0 / (c * c);
}

}  // namespace

double bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double bump_d1(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double w = 1.0 - s * s;
  return bump(s) * (-2.0 * s / (w * w));
}

double bump_d2(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double w = 1.0 - s * s;
  const double q1 = -2.0 * s / (w * w);
  const double q2 = -2.0 / (w * w) - 8.0 * s * s / (w * w * w);
  return bump(s) * (q1 * q1 + q2);
}

double bump_integral() {
  // The trapezoid rule converges faster than any power for this profile.
  static const double value = [] {
    const int n = 4000;
    double sum = 0.0;
    for (int i = 1; i < n; ++i) sum += bump(-1.0 + 2.0 * i / n);
    return sum * 2.0 / n;
  }();
  return value;
}

double PacketParams::lambda1() const { return 1.0 / (std::sqrt(t) * std::pow(v(), 0.25)); }
double PacketParams::lambda2() const { return std::pow(v(), 0.25) / std::sqrt(t); }

std::pair<double, double> PacketParams::coords(double x, double y) const {
  const double z = -x + y * y / (4.0 * t);
  return {lambda1() * (z - v() * t), lambda2() * (y - vel.v2 * t)};
}

double PacketParams::chi(double alpha, double beta) const {
  return bump(alpha) * bump(beta) * chi_norm();
}

void PacketParams::validate() const {
  if (!(t > 0.0)) throw Error(ErrorKind::kDomain, "packet requires t > 0");
  if (!vel.admissible()) {
    throw Error(ErrorKind::kDomain, "packet requires v = -v1 + v2^2/4 > 0");
  }
  if (v() < std::pow(t, -2.0 / 3.0)) {
    throw Error(ErrorKind::kDomain, "packet requires v >= t^{-2/3}");
  }
}

Grid2D packet_grid(const PacketParams& p, int nx, int ny, double margin) {
  p.validate();
  const Support s = packet_support(p);
  const double half_x = 0.5 * (s.x_hi - s.x_lo) * margin;
  const double half_y = 0.5 * (s.y_hi - s.y_lo) * margin;
  return Grid2D::make(nx, ny, 4.0 * half_x, 4.0 * half_y, 0.5 * (s.x_lo + s.x_hi),
                      0.5 * (s.y_lo + s.y_hi));
}

ComplexField packet_leading(const PacketParams& p, const Grid2D& g) {
  p.validate();
  require_inside(p, g);
  ComplexField out = ComplexField::zeros(g, p.t);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const auto [a, b] = p.coords(g.x(i), g.y(j));
      const double c = p.chi(a, b);
      if (c == 0.0) continue;
      out.at(i, j) = std::polar(c, phase_phi(p.t, g.x(i), g.y(j)));
    }
  }
  return out;
}

ComplexField packet_potential(const PacketParams& p, const Grid2D& g) {
  return cplx(0.0, -kSqrt3 / std::sqrt(p.v())) * packet_leading(p, g);
}

ComplexField build_packet(const PacketParams& p, const Grid2D& g) {
  return derivative(packet_potential(p, g), 1, 0);
}

cplx gamma_of_ux(const RealField& ux, const PacketParams& p) {
  const ComplexField psi = build_packet(p, ux.grid);
  cplx sum = 0.0;
  for (std::size_t n = 0; n < psi.samples.size(); ++n) {
    sum += ux.samples[n] * std::conj(psi.samples[n]);
  }
  return sum * ux.grid.cell_area();
}

cplx gamma(const RealField& u, const PacketParams& p) {
  return gamma_of_ux(derivative(u, 1, 0), p);
}

cplx gamma_simplified(const RealField& u, const PacketParams& p) {
  const RealField ux = derivative(u, 1, 0);
  const ComplexField lead = packet_leading(p, u.grid);
  cplx sum = 0.0;
  for (std::size_t n = 0; n < lead.samples.size(); ++n) {
    sum += ux.samples[n] * std::conj(lead.samples[n]);
  }
  return sum * u.grid.cell_area();
}

PacketResidual packet_residual(const PacketParams& p, const Grid2D& g) {
  p.validate();
  PacketResidual out;
  const double h = std::min(0.01, p.t / 100.0);
  out.time_step = h;
  if (h > p.t / 50.0 || p.t - 2.0 * h <= 0.0) {
    throw Error(ErrorKind::kInvalidInput, "packet_residual: time step too large for t");
  }
  auto at = [&](double dt) {
    PacketParams q = p;
    q.t = p.t + dt;
    return packet_potential(q, g);
  };
  const ComplexField g0 = at(0.0);
  const ComplexField gp1 = at(h), gm1 = at(-h), gp2 = at(2.0 * h), gm2 = at(-2.0 * h);
  ComplexField gt = ComplexField::zeros(g, p.t);
  for (std::size_t n = 0; n < gt.samples.size(); ++n) {
    gt.samples[n] = (-gp2.samples[n] + 8.0 * gp1.samples[n] - 8.0 * gm1.samples[n] +
                     gm2.samples[n]) /
                    (12.0 * h);
  }
  // L Psi = d_x G_t + d_x^4 G - d_y^2 G.
  SpectralField a = apply_multiplier(forward_transform(gt), symbol_dx(g, 1));
  SpectralField b = apply_multiplier(
      forward_transform(g0),
      symbol_from(g, [](double xi, double eta) { return cplx(xi * xi * xi * xi + eta * eta); },
                  "dx^4 - dy^2"));
  out.residual = inverse_transform_complex(a + b);

  out.leading = ComplexField::zeros(g, p.t);
  const double c = chi_norm();
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const auto [al, be] = p.coords(g.x(i), g.y(j));
      if (std::abs(al) >= 1.0 || std::abs(be) >= 1.0) continue;
      const double ba = bump(al), bb = bump(be);
      const double chi = c * ba * bb;
      const double chi_a = c * bump_d1(al) * bb;
      const double chi_b = c * ba * bump_d1(be);
      const double chi_aa = c * bump_d2(al) * bb;
      const double chi_bb = c * ba * bump_d2(be);
      const cplx bracket(chi + 0.5 * (al * chi_a + be * chi_b), kSqrt3 * (chi_aa + chi_bb));
      out.leading.at(i, j) = bracket * std::polar(1.0 / p.t, phase_phi(p.t, g.x(i), g.y(j)));
    }
  }
  out.remainder = out.residual - out.leading;
  out.residual_sup = sup_norm(out.residual);
  out.leading_sup = sup_norm(out.leading);
  out.remainder_sup = sup_norm(out.remainder);
  return out;
}

namespace {

cplx eval_series(const RealField& u, double x, double y, bool plus_only) {
  const Grid2D& g = u.grid;
  const SpectralField F = forward_transform(u);
  std::vector<cplx> ey(g.ny);
  for (int k = 0; k < g.ny; ++k) ey[k] = std::polar(1.0, g.eta(k) * y);
  cplx sum = 0.0;
  for (int j = 0; j < g.nx; ++j) {
    const int m = g.x_mode(j);
    if (m == 0 || g.is_x_nyquist(j) || (plus_only && m < 0)) continue;
    cplx row = 0.0;
    for (int k = 0; k < g.ny; ++k) row += F.at(j, k) * ey[k];
    sum += row * cplx(0.0, g.xi(j)) * std::polar(1.0, g.xi(j) * x);
  }
  return sum;
}

void require_trusted_point(const Grid2D& g, double x, double y) {
  if (std::abs(x - g.x0) > 0.25 * g.lx || std::abs(y - g.y0) > 0.25 * g.ly) {
    throw Error(ErrorKind::kDomain, "ray point lies outside the central half of the box");
  }
}

}  // namespace

double eval_ux(const RealField& u, double x, double y) {
  return eval_series(u, x, y, false).real();
}

cplx eval_ux_plus(const RealField& u, double x, double y) {
  return eval_series(u, x, y, true);
}

double reconstruction_error(const RealField& u, const PacketParams& p) {
  p.validate();
  const double x = p.vel.v1 * p.t, y = p.vel.v2 * p.t;
  require_trusted_point(u.grid, x, y);
  const cplx g = gamma(u, p);
  const double rec = 2.0 / p.t * (std::polar(1.0, phase_phi(p.t, x, y)) * g).real();
  return std::abs(eval_ux(u, x, y) - rec);
}

double reconstruction_envelope(const RealField& u, const PacketParams& p) {
  p.validate();
  const double x = p.vel.v1 * p.t, y = p.vel.v2 * p.t;
  require_trusted_point(u.grid, x, y);
  const cplx g = gamma(u, p);
  return 2.0 * std::abs(eval_ux_plus(u, x, y) - std::polar(1.0 / p.t, phase_phi(p.t, x, y)) * g);
}

std::vector<double> fornberg_weights(double x0, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  if (n < m) throw Error(ErrorKind::kInvalidInput, "fornberg_weights: too few nodes");
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

std::vector<std::pair<double, double>> gamma_dot_series(const GammaSeries& series) {
  const auto& s = series.samples;
  const int n = static_cast<int>(s.size());
  if (n < 3) throw Error(ErrorKind::kInvalidInput, "gamma_dot_series: needs at least 3 samples");
  for (int i = 1; i < n; ++i) {
    if (!(s[i].t > s[i - 1].t)) {
      throw Error(ErrorKind::kInvalidInput, "gamma_dot_series: times must increase");
    }
  }
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < n; ++i) {
    int lo, hi;
    if (i >= 2 && i + 2 < n) {
      lo = i - 2, hi = i + 2;
    } else if (i >= 1 && i + 1 < n) {
      lo = i - 1, hi = i + 1;
    } else if (i == 0) {
      lo = 0, hi = 2;
    } else {
      lo = n - 3, hi = n - 1;
    }
    std::vector<double> nodes;
    for (int k = lo; k <= hi; ++k) nodes.push_back(s[k].t);
    const auto w = fornberg_weights(s[i].t, nodes, 1);
    cplx d = 0.0;
    for (int k = lo; k <= hi; ++k) d += w[k - lo] * s[k].gamma;
    out.emplace_back(s[i].t, std::abs(d));
  }
  return out;
}

}  // namespace kp
