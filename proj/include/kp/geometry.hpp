#pragma once

#include <array>
#include <utility>

namespace kp {

// Ray x = v1 t, y = v2 t.
struct RayVelocity {
  double v1 = 0.0;
  double v2 = 0.0;

  // v = -v1 + v2^2 / 4; rays with v > 0 carry a packet.
  double v() const { return -v1 + 0.25 * v2 * v2; }
  bool admissible() const { return v() > 0.0; }
};

struct Wavenumber {
  double xi = 0.0;
  double eta = 0.0;
};

struct ResonantTriad {
  Wavenumber k1, k2, k3;
  // |omega(k1) + omega(k2) - omega(k3)| / max |omega(k_i)|.
  double residual = 0.0;
};

// (sqrt(v/3), -v2 sqrt(v) / (2 sqrt 3)); v <= 0 is a domain error.
Wavenumber ray_frequency(const RayVelocity& vel);
// (-3 xi^2 + eta^2 / xi^2, -2 eta / xi); xi = 0 is a domain error.
RayVelocity group_velocity(double xi, double eta);
// -(2 / (3 sqrt 3)) t^{-1/2} z^{3/2} with z = -x + y^2 / (4t).
double phase_phi(double t, double x, double y);
// z = -x + y^2 / (4t).
double ray_z(double t, double x, double y);
// Solves eta1/xi1 - eta2/xi2 = branch * sqrt(3) (xi1 + xi2) for eta2.
ResonantTriad resonant_triad(double xi1, double xi2, double eta1, int branch);
// Sum of both resonance-equation defects, relative to the largest term.
double triad_defect(const ResonantTriad& t);

}  // namespace kp
