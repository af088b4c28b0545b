#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "kp/evolution.hpp"

namespace kp::harness {

using Series = std::vector<std::pair<double, double>>;

struct DecayFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual_rms = 0.0;  // in log(value)
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t points = 0;
};

// Least squares for log(value) = log(prefactor) + exponent log(t) over the
// points with t in [t_min, t_max]. Needs at least 5 such points, all with
// positive t and value.
DecayFit fit_decay(const Series& series,
                   double t_min = 0.0,
                   double t_max = std::numeric_limits<double>::infinity());

enum class SupQuantity { kU, kUx };

Series sup_norm_series(const Trajectory& traj, SupQuantity q);

}  // namespace kp::harness
