#pragma once

#include <complex>
#include <memory>

namespace kp {

// Unnormalized 2-D transforms of an nx x ny row-major array, backed by FFTW.
// The r2c half spectrum has shape nx x (ny/2 + 1). Instances own their
// plans and aligned work buffers; one instance per thread.
class Fft2D {
 public:
  Fft2D(int nx, int ny);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ny_half() const { return ny_ / 2 + 1; }

  // out[j * ny_half + k] = sum_{i,l} in[i * ny + l] e^{-2 pi i (ij/nx + lk/ny)}
  void r2c(const double* in, std::complex<double>* out);
  // Backward transform of a Hermitian half spectrum; input is not modified.
  void c2r(const std::complex<double>* in, double* out);
  void c2c_forward(const std::complex<double>* in, std::complex<double>* out);
  void c2c_backward(const std::complex<double>* in, std::complex<double>* out);

 private:
  struct Impl;
  int nx_;
  int ny_;
  std::unique_ptr<Impl> impl_;
};

// Per-thread cached instance for the given shape.
Fft2D& shared_fft(int nx, int ny);

// In-place unnormalized 1-D transforms of an nx x ny row-major array along
// one axis (0: x, 1: y). sign is -1 for forward, +1 for backward.
void fft_axis(std::complex<double>* data, int nx, int ny, int axis, int sign);

}  // namespace kp
