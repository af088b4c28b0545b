#pragma once

#include <cstddef>
#include <numbers>

namespace kp {

// Periodic box [x0 - lx/2, x0 + lx/2) x [y0 - ly/2, y0 + ly/2) sampled on an
// nx x ny lattice. Sample (i, j) sits at (x(i), y(j)) and is stored at
// index(i, j) = i * ny + j. Spectral index j carries the signed mode
// j < nx/2 ? j : j - nx, so the Nyquist mode belongs to the negative half.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  // Validating constructor; throws kp::Error on a malformed grid.
  static Grid2D make(int nx, int ny, double lx, double ly, double x0 = 0.0,
                     double y0 = 0.0);
  void validate() const;

  double hx() const { return lx / nx; }
  double hy() const { return ly / ny; }
  double cell_area() const { return hx() * hy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * ny + j;
  }

  double x_start() const { return x0 - 0.5 * lx; }
  double y_start() const { return y0 - 0.5 * ly; }
  double x(int i) const { return x_start() + i * hx(); }
  double y(int j) const { return y_start() + j * hy(); }

  int x_mode(int j) const { return j < nx / 2 ? j : j - nx; }
  int y_mode(int k) const { return k < ny / 2 ? k : k - ny; }
  double xi(int j) const { return 2.0 * std::numbers::pi * x_mode(j) / lx; }
  double eta(int k) const { return 2.0 * std::numbers::pi * y_mode(k) / ly; }
  bool is_x_nyquist(int j) const { return j == nx / 2; }
  bool is_y_nyquist(int k) const { return k == ny / 2; }
  int x_partner(int j) const { return (nx - j) % nx; }
  int y_partner(int k) const { return (ny - k) % ny; }

  double xi_min() const { return 2.0 * std::numbers::pi / lx; }
  double xi_max() const { return std::numbers::pi * nx / lx; }
  double eta_max() const { return std::numbers::pi * ny / ly; }

  bool operator==(const Grid2D&) const = default;
};

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* where);

}  // namespace kp
