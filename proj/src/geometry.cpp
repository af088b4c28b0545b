#include "kp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kp/error.hpp"
#include "kp/spectral.hpp"

namespace kp {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

Wavenumber ray_frequency(const RayVelocity& vel) {
  const double v = vel.v();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::kDomain,
                "ray_frequency: v = -v1 + v2^2/4 must be positive (got " + std::to_string(v) +
                    ")");
  }
  const double sv = std::sqrt(v);
  return {sv / kSqrt3, -vel.v2 * sv / (2.0 * kSqrt3)};
}

RayVelocity group_velocity(double xi, double eta) {
  if (xi == 0.0 || !std::isfinite(xi)) {
    throw Error(ErrorKind::kDomain, "group_velocity: xi must be nonzero");
  }
  const double r = eta / xi;
  return {-3.0 * xi * xi + r * r, -2.0 * r};
}

double ray_z(double t, double x, double y) {
  if (!(t > 0.0)) throw Error(ErrorKind::kDomain, "ray_z: t must be positive");
  return -x + y * y / (4.0 * t);
}

double phase_phi(double t, double x, double y) {
  const double z = ray_z(t, x, y);
  if (z < 0.0) {
    throw Error(ErrorKind::kDomain, "phase_phi: z = -x + y^2/(4t) must be nonnegative");
  }
  return -(2.0 / (3.0 * kSqrt3)) * std::pow(z, 1.5) / std::sqrt(t);
}

ResonantTriad resonant_triad(double xi1, double xi2, double eta1, int branch) {
  const double xi3 = xi1 + xi2;
  if (xi1 == 0.0 || xi2 == 0.0 || xi3 == 0.0) {
    throw Error(ErrorKind::kDomain, "resonant_triad: xi1, xi2 and xi1 + xi2 must be nonzero");
  }
  if (branch != 1 && branch != -1) {
    throw Error(ErrorKind::kInvalidInput, "resonant_triad: branch must be +1 or -1");
  }
  ResonantTriad t;
  t.k1 = {xi1, eta1};
  t.k2 = {xi2, xi2 * (eta1 / xi1 - branch * kSqrt3 * xi3)};
  t.k3 = {xi3, eta1 + t.k2.eta};
  const double w1 = dispersion_omega(t.k1.xi, t.k1.eta);
  const double w2 = dispersion_omega(t.k2.xi, t.k2.eta);
  const double w3 = dispersion_omega(t.k3.xi, t.k3.eta);
  const double scale = std::max({std::abs(w1), std::abs(w2), std::abs(w3)});
  t.residual = scale > 0.0 ? std::abs(w1 + w2 - w3) / scale : std::abs(w1 + w2 - w3);
  return t;
}

double triad_defect(const ResonantTriad& t) {
  const double w1 = dispersion_omega(t.k1.xi, t.k1.eta);
  const double w2 = dispersion_omega(t.k2.xi, t.k2.eta);
  const double w3 = dispersion_omega(t.k3.xi, t.k3.eta);
  const double scale = std::max({std::abs(w1), std::abs(w2), std::abs(w3), 1e-300});
  const double sum_x = std::abs(t.k1.xi + t.k2.xi - t.k3.xi);
  const double sum_y = std::abs(t.k1.eta + t.k2.eta - t.k3.eta);
  const double kscale = std::max({std::abs(t.k3.xi), std::abs(t.k3.eta), std::abs(t.k1.xi),
                                  std::abs(t.k1.eta), 1e-300});
  return std::abs(w1 + w2 - w3) / scale + (sum_x + sum_y) / kscale;
}

}  // namespace kp
