#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "kp/grid.hpp"

namespace kp {

using cplx = std::complex<double>;

// Real samples on the lattice, stored at grid.index(i, j).
struct RealField {
  Grid2D grid;
  std::vector<double> samples;
  double time = 0.0;

  static RealField zeros(const Grid2D& grid, double time = 0.0);
  double& at(int i, int j) { return samples[grid.index(i, j)]; }
  double at(int i, int j) const { return samples[grid.index(i, j)]; }
};

// Complex samples on the lattice (u^+, packets, dyadic pieces).
struct ComplexField {
  Grid2D grid;
  std::vector<cplx> samples;
  double time = 0.0;

  static ComplexField zeros(const Grid2D& grid, double time = 0.0);
  cplx& at(int i, int j) { return samples[grid.index(i, j)]; }
  cplx at(int i, int j) const { return samples[grid.index(i, j)]; }
};

// Fourier coefficients in absolute coordinates:
//   f(x, y) = sum_{j,k} coeffs[j * ny + k] * exp(i (xi_j x + eta_k y)).
// Mode j runs over FFT order (see Grid2D::x_mode).
struct SpectralField {
  Grid2D grid;
  std::vector<cplx> coeffs;
  double time = 0.0;

  static SpectralField zeros(const Grid2D& grid, double time = 0.0);
  cplx& at(int j, int k) { return coeffs[grid.index(j, k)]; }
  cplx at(int j, int k) const { return coeffs[grid.index(j, k)]; }
};

double l2_norm(const RealField& f);
double l2_norm(const ComplexField& f);
// Parseval-weighted: sqrt(Lx Ly sum |c|^2).
double l2_norm(const SpectralField& f);
double sup_norm(const RealField& f);
double sup_norm(const ComplexField& f);
double inner(const RealField& f, const RealField& g);
// <f, g> = integral f conj(g).
cplx inner(const ComplexField& f, const ComplexField& g);
cplx inner(const SpectralField& f, const SpectralField& g);

// Samples must all be finite; throws kInvalidInput otherwise.
void require_finite(const RealField& f, const char* where);
void require_finite(const ComplexField& f, const char* where);

RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);
ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(cplx s, const ComplexField& a);
ComplexField operator*(double s, const ComplexField& a);
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(cplx s, const SpectralField& a);

// Pointwise products in physical space.
RealField multiply(const RealField& a, const RealField& b);
ComplexField multiply(const ComplexField& a, const ComplexField& b);

ComplexField to_complex(const RealField& f);
RealField real_part(const ComplexField& f);
ComplexField conj(const ComplexField& f);

}  // namespace kp
