#include "kp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kp/error.hpp"
#include "kp/fft.hpp"

namespace kp {

namespace {

constexpr double kHermitianTol = 1e-12;

// Per-axis factors exp(-i xi_j x_start) and exp(-i eta_k y_start).
void phase_factors(const Grid2D& g, std::vector<cplx>& px, std::vector<cplx>& py) {
  px.resize(g.nx);
  py.resize(g.ny);
  for (int j = 0; j < g.nx; ++j) px[j] = std::polar(1.0, -g.xi(j) * g.x_start());
  for (int k = 0; k < g.ny; ++k) py[k] = std::polar(1.0, -g.eta(k) * g.y_start());
}

// Raw DFT coefficients / N (full array) -> absolute-coordinate coefficients.
SpectralField phase_in(const Grid2D& g, std::vector<cplx> raw, double time) {
  std::vector<cplx> px, py;
  phase_factors(g, px, py);
  const double inv_n = 1.0 / static_cast<double>(g.size());
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < g.ny; ++k) raw[g.index(j, k)] *= inv_n * px[j] * py[k];
  }
  return SpectralField{g, std::move(raw), time};
}

// Absolute-coordinate coefficients -> unnormalized backward-DFT input.
std::vector<cplx> phase_out(const SpectralField& F) {
  const Grid2D& g = F.grid;
  std::vector<cplx> px, py;
  phase_factors(g, px, py);
  std::vector<cplx> raw(F.coeffs);
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < g.ny; ++k) {
      raw[g.index(j, k)] *= std::conj(px[j] * py[k]);
    }
  }
  return raw;
}

double defect_of(const Grid2D& g, const std::vector<cplx>& raw) {
  double scale = 0.0;
  for (const cplx& v : raw) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < g.ny; ++k) {
      const cplx a = raw[g.index(j, k)];
      const cplx b = raw[g.index(g.x_partner(j), g.y_partner(k))];
      worst = std::max(worst, std::abs(a - std::conj(b)));
    }
  }
  return worst / scale;
}

cplx ipow(cplx base, int n) {
  cplx r = 1.0;
  for (int m = 0; m < n; ++m) r *= base;
  return r;
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
  f.grid.validate();
  require_finite(f, "forward_transform");
  const Grid2D& g = f.grid;
  Fft2D& fft = shared_fft(g.nx, g.ny);
  const int nh = fft.ny_half();
  std::vector<cplx> half(static_cast<std::size_t>(g.nx) * nh);
  fft.r2c(f.samples.data(), half.data());
  std::vector<cplx> raw(g.size());
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < nh; ++k) raw[g.index(j, k)] = half[j * nh + k];
    // Columns k = 0 and k = ny/2 are self-conjugate; make their symmetry exact.
    for (int k : {0, g.ny / 2}) {
      raw[g.index(j, k)] = 0.5 * (half[static_cast<std::size_t>(j) * nh + k] +
                                  std::conj(half[static_cast<std::size_t>(g.x_partner(j)) * nh + k]));
    }
    for (int k = nh; k < g.ny; ++k) {
      raw[g.index(j, k)] =
          std::conj(half[static_cast<std::size_t>(g.x_partner(j)) * nh + g.y_partner(k)]);
    }
  }
  return phase_in(g, std::move(raw), f.time);
}

SpectralField forward_transform(const ComplexField& f) {
  f.grid.validate();
  require_finite(f, "forward_transform");
  const Grid2D& g = f.grid;
  std::vector<cplx> raw(g.size());
  shared_fft(g.nx, g.ny).c2c_forward(f.samples.data(), raw.data());
  return phase_in(g, std::move(raw), f.time);
}

double hermitian_defect(const SpectralField& F) {
  return defect_of(F.grid, phase_out(F));
}

RealField inverse_transform(const SpectralField& F) {
  const Grid2D& g = F.grid;
  g.validate();
  std::vector<cplx> raw = phase_out(F);
  const double defect = defect_of(g, raw);
  if (!(defect <= kHermitianTol)) {
    throw Error(ErrorKind::kInvalidInput,
                "inverse_transform: coefficients are not Hermitian (defect " +
                    std::to_string(defect) + ")");
  }
  Fft2D& fft = shared_fft(g.nx, g.ny);
  const int nh = fft.ny_half();
  std::vector<cplx> half(static_cast<std::size_t>(g.nx) * nh);
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < nh; ++k) {
      // Symmetrize the self-conjugate columns so c2r sees exact data.
      const cplx a = raw[g.index(j, k)];
      const cplx b = std::conj(raw[g.index(g.x_partner(j), g.y_partner(k))]);
      half[static_cast<std::size_t>(j) * nh + k] = 0.5 * (a + b);
    }
  }
  RealField out = RealField::zeros(g, F.time);
  fft.c2r(half.data(), out.samples.data());
  return out;
}

ComplexField inverse_transform_complex(const SpectralField& F) {
  const Grid2D& g = F.grid;
  g.validate();
  std::vector<cplx> raw = phase_out(F);
  ComplexField out = ComplexField::zeros(g, F.time);
  shared_fft(g.nx, g.ny).c2c_backward(raw.data(), out.samples.data());
  return out;
}

Multiplier symbol_derivative(const Grid2D& g, int ox, int oy) {
  if (oy < 0) {
    throw Error(ErrorKind::kInvalidInput, "symbol_derivative: negative y order");
  }
  Multiplier m{g, std::vector<cplx>(g.size()), ""};
  m.description = "dx^" + std::to_string(ox) + " dy^" + std::to_string(oy);
  const bool odd_x = (ox % 2) != 0;
  const bool odd_y = (oy % 2) != 0;
  for (int j = 0; j < g.nx; ++j) {
    const double xi = g.xi(j);
    cplx fx;
    if (ox >= 0) {
      fx = ipow(cplx(0.0, xi), ox);
    } else {
      fx = (xi == 0.0) ? cplx(0.0) : 1.0 / ipow(cplx(0.0, xi), -ox);
    }
    if (odd_x && g.is_x_nyquist(j)) fx = 0.0;
    for (int k = 0; k < g.ny; ++k) {
      cplx fy = ipow(cplx(0.0, g.eta(k)), oy);
      if (odd_y && g.is_y_nyquist(k)) fy = 0.0;
      m.values[g.index(j, k)] = fx * fy;
    }
  }
  return m;
}

Multiplier symbol_dx(const Grid2D& g, int order) {
  if (order < 0) throw Error(ErrorKind::kInvalidInput, "symbol_dx: negative order");
  return symbol_derivative(g, order, 0);
}

Multiplier symbol_dy(const Grid2D& g, int order) {
  return symbol_derivative(g, 0, order);
}

Multiplier symbol_dx_inv(const Grid2D& g, int order) {
  if (order < 0) throw Error(ErrorKind::kInvalidInput, "symbol_dx_inv: negative order");
  return symbol_derivative(g, -order, 0);
}

Multiplier symbol_omega(const Grid2D& g) {
  Multiplier m{g, std::vector<cplx>(g.size()), "omega"};
  for (int j = 0; j < g.nx; ++j) {
    if (g.x_mode(j) == 0 || g.is_x_nyquist(j)) continue;
    const double xi = g.xi(j);
    for (int k = 0; k < g.ny; ++k) {
      m.values[g.index(j, k)] = dispersion_omega(xi, g.eta(k));
    }
  }
  return m;
}

Multiplier symbol_linear_phase(const Grid2D& g, double dt) {
  Multiplier m{g, std::vector<cplx>(g.size()), "exp(i omega dt)"};
  for (int j = 0; j < g.nx; ++j) {
    if (g.x_mode(j) == 0) continue;
    const double xi = g.xi(j);
    for (int k = 0; k < g.ny; ++k) {
      m.values[g.index(j, k)] =
          g.is_x_nyquist(j) ? cplx(1.0) : std::polar(1.0, dispersion_omega(xi, g.eta(k)) * dt);
    }
  }
  return m;
}

Multiplier symbol_dealias(const Grid2D& g) {
  Multiplier m{g, std::vector<cplx>(g.size()), "dealias 2/3"};
  for (int j = 0; j < g.nx; ++j) {
    const bool keep_x = 3 * std::abs(g.x_mode(j)) < g.nx;
    for (int k = 0; k < g.ny; ++k) {
      const bool keep_y = 3 * std::abs(g.y_mode(k)) < g.ny;
      m.values[g.index(j, k)] = (keep_x && keep_y) ? 1.0 : 0.0;
    }
  }
  return m;
}

Multiplier symbol_from(const Grid2D& g, const std::function<cplx(double, double)>& fn,
                       std::string description) {
  Multiplier m{g, std::vector<cplx>(g.size()), std::move(description)};
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < g.ny; ++k) m.values[g.index(j, k)] = fn(g.xi(j), g.eta(k));
  }
  for (const cplx& v : m.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::kInvalidInput, "symbol_from: non-finite symbol value");
    }
  }
  return m;
}

Multiplier compose(const Multiplier& a, const Multiplier& b) {
  require_same_grid(a.grid, b.grid, "compose");
  Multiplier m{a.grid, a.values, a.description + " * " + b.description};
  for (std::size_t n = 0; n < m.values.size(); ++n) m.values[n] *= b.values[n];
  return m;
}

SpectralField apply_multiplier(const SpectralField& F, const Multiplier& m) {
  require_same_grid(F.grid, m.grid, "apply_multiplier");
  SpectralField out = F;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] *= m.values[n];
  return out;
}

SpectralField project_zero_xmodes(const SpectralField& F) {
  SpectralField out = F;
  for (int k = 0; k < F.grid.ny; ++k) out.at(0, k) = 0.0;
  return out;
}

RealField project_zero_xmodes(const RealField& f) {
  // Subtracting each row's x-mean is the same projection without a transform.
  RealField out = f;
  const Grid2D& g = f.grid;
  for (int j = 0; j < g.ny; ++j) {
    double mean = 0.0;
    for (int i = 0; i < g.nx; ++i) mean += f.at(i, j);
    mean /= g.nx;
    for (int i = 0; i < g.nx; ++i) out.at(i, j) -= mean;
  }
  return out;
}

double dispersion_omega(double xi, double eta) {
  if (xi == 0.0 || !std::isfinite(xi) || !std::isfinite(eta)) {
    throw Error(ErrorKind::kDomain, "dispersion_omega: requires finite xi != 0");
  }
  return xi * xi * xi + eta * eta / xi;
}

RealField apply_symbol(const RealField& f, const Multiplier& m) {
  return inverse_transform(apply_multiplier(forward_transform(f), m));
}

ComplexField apply_symbol(const ComplexField& f, const Multiplier& m) {
  return inverse_transform_complex(apply_multiplier(forward_transform(f), m));
}

RealField derivative(const RealField& f, int ox, int oy) {
  return apply_symbol(f, symbol_derivative(f.grid, ox, oy));
}

ComplexField derivative(const ComplexField& f, int ox, int oy) {
  return apply_symbol(f, symbol_derivative(f.grid, ox, oy));
}

double max_row_mean(const RealField& f) {
  const Grid2D& g = f.grid;
  const double scale = sup_norm(f);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    double mean = 0.0;
    for (int i = 0; i < g.nx; ++i) mean += f.at(i, j);
    worst = std::max(worst, std::abs(mean / g.nx));
  }
  return worst / scale;
}

}  // namespace kp
