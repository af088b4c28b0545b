#include "kp/harness/initial_data.hpp"

#include <cmath>
#include <random>

#include "kp/error.hpp"
#include "kp/spectral.hpp"

namespace kp::harness {

namespace {

void to_json_packet(nlohmann::json& j, const PacketSpec& p) {
  j = {{"xi0", p.xi0}, {"eta0", p.eta0}, {"xc", p.xc}, {"yc", p.yc}};
}

PacketSpec packet_from_json(const nlohmann::json& j, const PacketSpec& def) {
  PacketSpec p = def;
  p.xi0 = j.value("xi0", def.xi0);
  p.eta0 = j.value("eta0", def.eta0);
  p.xc = j.value("xc", def.xc);
  p.yc = j.value("yc", def.yc);
  return p;
}

}  // namespace

void InitialDataSpec::validate() const {
  if (family != "zero" && family != "modulated_gaussian" && family != "two_packet" &&
      family != "noise") {
    throw Error(ErrorKind::kConfig, "initial_data.family: unknown family '" + family + "'");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::kConfig, "initial_data.epsilon: must be finite and >= 0");
  }
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) {
    throw Error(ErrorKind::kConfig, "initial_data.sigma_x/sigma_y: must be positive");
  }
  if (!(noise_bandwidth > 0.0)) {
    throw Error(ErrorKind::kConfig, "initial_data.noise_bandwidth: must be positive");
  }
}

nlohmann::json to_json(const InitialDataSpec& s) {
  nlohmann::json a, b;
  to_json_packet(a, s.first);
  to_json_packet(b, s.second);
  return {{"family", s.family},   {"epsilon", s.epsilon}, {"sigma_x", s.sigma_x},
          {"sigma_y", s.sigma_y}, {"first", a},           {"second", b},
          {"noise_bandwidth", s.noise_bandwidth}};
}

InitialDataSpec initial_data_from_json(const nlohmann::json& j) {
  InitialDataSpec s;
  try {
    s.family = j.value("family", s.family);
    s.epsilon = j.value("epsilon", s.epsilon);
    s.sigma_x = j.value("sigma_x", s.sigma_x);
    s.sigma_y = j.value("sigma_y", s.sigma_y);
    if (j.contains("first")) s.first = packet_from_json(j.at("first"), s.first);
    if (j.contains("second")) s.second = packet_from_json(j.at("second"), s.second);
    s.noise_bandwidth = j.value("noise_bandwidth", s.noise_bandwidth);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("initial_data: ") + e.what());
  }
  s.validate();
  return s;
}

RealField modulated_gaussian(const Grid2D& g, double eps, const PacketSpec& p, double sx,
                             double sy) {
  RealField u = RealField::zeros(g);
  for (int i = 0; i < g.nx; ++i) {
    const double dx = g.x(i) - p.xc;
    for (int j = 0; j < g.ny; ++j) {
      const double dy = g.y(j) - p.yc;
      const double env = std::exp(-dx * dx / (sx * sx) - dy * dy / (sy * sy));
      const double th = p.xi0 * dx + p.eta0 * dy;
      u.at(i, j) = eps * env * (-2.0 * dx / (sx * sx) * std::cos(th) - p.xi0 * std::sin(th));
    }
  }
  return project_zero_xmodes(u);
}

RealField seeded_noise(const Grid2D& g, double eps, double bandwidth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField F = SpectralField::zeros(g);
  // Fill one member of each conjugate pair, then mirror.
  for (int j = 1; j < g.nx / 2; ++j) {
    for (int k = 0; k < g.ny; ++k) {
      const double xi = g.xi(j), eta = g.eta(k);
      const double env = std::exp(-(xi * xi + eta * eta) / (bandwidth * bandwidth));
      const double re = normal(rng);
      const double im = normal(rng);
      if (g.is_y_nyquist(k)) continue;
      const cplx c = env * cplx(re, im);
      F.at(j, k) = c;
      F.at(g.x_partner(j), g.y_partner(k)) = std::conj(c);
    }
  }
  RealField u = inverse_transform(F);
  const double n = l2_norm(u);
  if (n > 0.0) u = (eps / n) * u;
  return u;
}

RealField make_initial_data(const Grid2D& g, const InitialDataSpec& s, std::uint64_t seed) {
  s.validate();
  if (s.family == "zero") return RealField::zeros(g);
  if (s.family == "modulated_gaussian") {
    return modulated_gaussian(g, s.epsilon, s.first, s.sigma_x, s.sigma_y);
  }
  if (s.family == "two_packet") {
    return modulated_gaussian(g, s.epsilon, s.first, s.sigma_x, s.sigma_y) +
           modulated_gaussian(g, s.epsilon, s.second, s.sigma_x, s.sigma_y);
  }
  return seeded_noise(g, s.epsilon, s.noise_bandwidth, seed);
}

}  // namespace kp::harness
