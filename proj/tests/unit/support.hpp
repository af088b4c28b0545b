#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "kp/field.hpp"
#include "kp/spectral.hpp"

namespace kp::test {

// Smooth random real field with zero x-mean rows.
inline RealField random_field(const Grid2D& g, std::uint64_t seed, double bandwidth = 2.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  RealField f = RealField::zeros(g);
  for (auto& s : f.samples) s = n(rng);
  const Multiplier smooth = symbol_from(
      g,
      [bandwidth](double xi, double eta) {
        return cplx(std::exp(-(xi * xi + eta * eta) / (bandwidth * bandwidth)));
      },
      "gaussian smoothing");
  return project_zero_xmodes(apply_symbol(f, smooth));
}

inline double rel_diff(const RealField& a, const RealField& b) {
  return l2_norm(a - b) / l2_norm(b);
}

}  // namespace kp::test
