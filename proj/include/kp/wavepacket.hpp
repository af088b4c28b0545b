#pragma once

#include <utility>
#include <vector>

#include "kp/field.hpp"
#include "kp/geometry.hpp"

namespace kp {

// One-dimensional bump exp(-1/(1 - s^2)) on |s| < 1 and its first two
// derivatives; the packet profile is chi(a, b) = bump(a) bump(b) / c^2 with
// c = integral of bump, so that chi has unit integral.
double bump(double s);
double bump_d1(double s);
double bump_d2(double s);
double bump_integral();

struct PacketParams {
  RayVelocity vel;
  double t = 1.0;

  double v() const { return vel.v(); }
  double lambda1() const;  // t^{-1/2} v^{-1/4}
  double lambda2() const;  // t^{-1/2} v^{1/4}
  // Packet coordinates alpha = lambda1 (z - v t), beta = lambda2 (y - v2 t).
  std::pair<double, double> coords(double x, double y) const;
  double chi(double alpha, double beta) const;
  // Throws if v <= 0 or v < t^{-2/3}.
  void validate() const;
};

// A box of the given size centered on the ray point whose central half
// contains the packet support with the given relative margin.
Grid2D packet_grid(const PacketParams& p, int nx, int ny, double margin = 1.1);

// Psi_v = -i sqrt3 v^{-1/2} d_x (chi e^{i phi}), derivative taken spectrally.
ComplexField build_packet(const PacketParams& p, const Grid2D& grid);
// chi e^{i phi}, zero off the support.
ComplexField packet_leading(const PacketParams& p, const Grid2D& grid);
// G = -i sqrt3 v^{-1/2} chi e^{i phi}, so that Psi_v = d_x G.
ComplexField packet_potential(const PacketParams& p, const Grid2D& grid);

// gamma = integral u_x conj(Psi_v), by grid quadrature.
cplx gamma(const RealField& u, const PacketParams& p);
cplx gamma_of_ux(const RealField& ux, const PacketParams& p);
// Same pairing against the leading profile chi e^{i phi}.
cplx gamma_simplified(const RealField& u, const PacketParams& p);

struct PacketResidual {
  ComplexField residual;   // L Psi_v
  ComplexField leading;    // explicit t^{-1} terms times e^{i phi}
  ComplexField remainder;  // residual - leading
  double residual_sup = 0.0;
  double leading_sup = 0.0;
  double remainder_sup = 0.0;
  double time_step = 0.0;
};

// L Psi_v with d_t by fourth-order centered differences of the packet in t
// (step min(0.01, t/100)). The explicit part is
//   e^{i phi} t^{-1} [chi + (alpha chi_a + beta chi_b)/2 + i sqrt3 (chi_aa + chi_bb)].
PacketResidual packet_residual(const PacketParams& p, const Grid2D& grid);

// u_x at (x, y) by evaluating the Fourier series exactly.
double eval_ux(const RealField& u, double x, double y);
// Positive-frequency part u_x^+ at (x, y).
cplx eval_ux_plus(const RealField& u, double x, double y);

// |u_x(t, v t) - 2 t^{-1} Re(e^{i phi} gamma)| at the ray point.
double reconstruction_error(const RealField& u, const PacketParams& p);
// 2 |u_x^+(t, v t) - t^{-1} e^{i phi} gamma|, an envelope of the error above.
double reconstruction_envelope(const RealField& u, const PacketParams& p);

struct GammaSample {
  double t = 0.0;
  cplx gamma;
};

struct GammaSeries {
  RayVelocity vel;
  std::vector<GammaSample> samples;
};

// |d gamma / dt| by finite differences (Fornberg weights on the sample times;
// five-point centered stencils where available).
std::vector<std::pair<double, double>> gamma_dot_series(const GammaSeries& series);

// Finite-difference weights for the m-th derivative at x0 on nodes x.
std::vector<double> fornberg_weights(double x0, const std::vector<double>& x, int m);

}  // namespace kp
