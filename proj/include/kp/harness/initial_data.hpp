#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "kp/field.hpp"

namespace kp::harness {

// One Gaussian-modulated wave train; the second train of the two-packet
// family reuses the widths.
struct PacketSpec {
  double xi0 = 1.0;
  double eta0 = 0.0;
  double xc = 0.0;
  double yc = 0.0;
};

// family: "zero", "modulated_gaussian", "two_packet" or "noise".
struct InitialDataSpec {
  std::string family = "modulated_gaussian";
  double epsilon = 0.01;
  double sigma_x = 4.0;
  double sigma_y = 4.0;
  PacketSpec first;
  PacketSpec second{1.5, 0.5, 0.0, 0.0};
  // Spectral radius of the seeded noise family.
  double noise_bandwidth = 1.0;

  void validate() const;
};

nlohmann::json to_json(const InitialDataSpec& s);
InitialDataSpec initial_data_from_json(const nlohmann::json& j);

// eps * d_x( exp(-(x-xc)^2/sx^2 - (y-yc)^2/sy^2) cos(xi0 (x-xc) + eta0 (y-yc)) ),
// derivative taken analytically, then projected onto zero x-mean rows.
RealField modulated_gaussian(const Grid2D& g, double eps, const PacketSpec& p, double sx,
                             double sy);

// Smooth random field with a Gaussian spectral envelope and zero x-mean,
// normalized to L2 norm eps. Deterministic in the seed.
RealField seeded_noise(const Grid2D& g, double eps, double bandwidth, std::uint64_t seed);

RealField make_initial_data(const Grid2D& g, const InitialDataSpec& s, std::uint64_t seed);

}  // namespace kp::harness
