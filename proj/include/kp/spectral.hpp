#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kp/field.hpp"

namespace kp {

// Pointwise symbol over the wavenumber lattice (same layout as SpectralField).
struct Multiplier {
  Grid2D grid;
  std::vector<cplx> values;
  std::string description;
};

// Normalization: coeffs = DFT / (nx ny), phased to absolute coordinates, so
// that ||f||^2 = Lx Ly sum |coeffs|^2.
SpectralField forward_transform(const RealField& f);
SpectralField forward_transform(const ComplexField& f);
// Requires Hermitian symmetry to 1e-12 relative; returns real samples.
RealField inverse_transform(const SpectralField& F);
ComplexField inverse_transform_complex(const SpectralField& F);

// Largest |G(-k) - conj G(k)| / max |G| over the unphased coefficients G.
double hermitian_defect(const SpectralField& F);

// Symbol builders. Odd symbols vanish on their Nyquist line; anything with a
// negative power of xi vanishes on xi = 0.
Multiplier symbol_dx(const Grid2D& g, int order = 1);
Multiplier symbol_dy(const Grid2D& g, int order = 1);
// (i xi)^(-order).
Multiplier symbol_dx_inv(const Grid2D& g, int order = 1);
// (i xi)^ox (i eta)^oy with ox allowed negative.
Multiplier symbol_derivative(const Grid2D& g, int ox, int oy);
// omega(xi, eta) = xi^3 + eta^2 / xi.
Multiplier symbol_omega(const Grid2D& g);
// exp(i omega dt): the linear flow over a time span dt.
Multiplier symbol_linear_phase(const Grid2D& g, double dt);
// 1 where |mode_x| < nx/3 and |mode_y| < ny/3.
Multiplier symbol_dealias(const Grid2D& g);
Multiplier symbol_from(const Grid2D& g, const std::function<cplx(double, double)>& fn,
                       std::string description);
Multiplier compose(const Multiplier& a, const Multiplier& b);

SpectralField apply_multiplier(const SpectralField& F, const Multiplier& m);
SpectralField project_zero_xmodes(const SpectralField& F);
RealField project_zero_xmodes(const RealField& f);

// xi^3 + eta^2 / xi; xi = 0 is a domain error.
double dispersion_omega(double xi, double eta);

// Physical-space conveniences: transform, multiply, transform back.
RealField apply_symbol(const RealField& f, const Multiplier& m);
ComplexField apply_symbol(const ComplexField& f, const Multiplier& m);
RealField derivative(const RealField& f, int ox, int oy);
ComplexField derivative(const ComplexField& f, int ox, int oy);

// Row-wise maximum of |x-average| relative to max |f|.
double max_row_mean(const RealField& f);

}  // namespace kp
