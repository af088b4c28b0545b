#include "kp/harness/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kp/error.hpp"

namespace kp::harness {

DecayFit fit_decay(const Series& series, double t_min, double t_max) {
  if (!(t_min <= t_max)) throw Error(ErrorKind::kInvalidInput, "fit_decay: empty window");
  std::vector<double> lx, ly;
  for (const auto& [t, v] : series) {
    if (t < t_min || t > t_max) continue;
    if (!(t > 0.0) || !(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::kInvalidInput,
                  "fit_decay: nonpositive point (t=" + std::to_string(t) +
                      ", value=" + std::to_string(v) + ")");
    }
    lx.push_back(std::log(t));
    ly.push_back(std::log(v));
  }
  const std::size_t n = lx.size();
  if (n < 5) {
    throw Error(ErrorKind::kInvalidInput,
                "fit_decay: needs at least 5 points in the window, got " + std::to_string(n));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::kInvalidInput, "fit_decay: all points share one t");
  DecayFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - intercept - fit.exponent * lx[i];
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  fit.t_min = std::exp(*std::min_element(lx.begin(), lx.end()));
  fit.t_max = std::exp(*std::max_element(lx.begin(), lx.end()));
  fit.points = n;
  return fit;
}

Series sup_norm_series(const Trajectory& traj, SupQuantity q) {
  Series out;
  out.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) {
    const double v = q == SupQuantity::kU ? sup_norm(s) : sup_norm(derivative(s, 1, 0));
    out.emplace_back(s.time, v);
  }
  return out;
}

}  // namespace kp::harness
