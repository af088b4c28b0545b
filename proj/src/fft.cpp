#include "kp/fft.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <utility>

namespace kp {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

unsigned planner_flags() {
  const char* env = std::getenv("KP_FFTW_MEASURE");
  return (env != nullptr && env[0] == '1') ? FFTW_MEASURE : FFTW_ESTIMATE;
}

}  // namespace

struct Fft2D::Impl {
  double* real_buf = nullptr;
  fftw_complex* half_buf = nullptr;
  fftw_complex* full_in = nullptr;
  fftw_complex* full_out = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

Fft2D::Fft2D(int nx, int ny) : nx_(nx), ny_(ny), impl_(std::make_unique<Impl>()) {
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  const std::size_t nh = static_cast<std::size_t>(nx) * (ny / 2 + 1);
  std::lock_guard<std::mutex> lock(planner_mutex());
  const unsigned flags = planner_flags();
  impl_->real_buf = fftw_alloc_real(n);
  impl_->half_buf = fftw_alloc_complex(nh);
  impl_->full_in = fftw_alloc_complex(n);
  impl_->full_out = fftw_alloc_complex(n);
  impl_->r2c = fftw_plan_dft_r2c_2d(nx, ny, impl_->real_buf, impl_->half_buf, flags);
  impl_->c2r = fftw_plan_dft_c2r_2d(nx, ny, impl_->half_buf, impl_->real_buf, flags);
  impl_->fwd = fftw_plan_dft_2d(nx, ny, impl_->full_in, impl_->full_out,
                                FFTW_FORWARD, flags);
  impl_->bwd = fftw_plan_dft_2d(nx, ny, impl_->full_in, impl_->full_out,
                                FFTW_BACKWARD, flags);
}

Fft2D::~Fft2D() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(impl_->r2c);
  fftw_destroy_plan(impl_->c2r);
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->real_buf);
  fftw_free(impl_->half_buf);
  fftw_free(impl_->full_in);
  fftw_free(impl_->full_out);
}

void Fft2D::r2c(const double* in, std::complex<double>* out) {
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
  const std::size_t nh = static_cast<std::size_t>(nx_) * ny_half();
  std::memcpy(impl_->real_buf, in, n * sizeof(double));
  fftw_execute(impl_->r2c);
  std::memcpy(static_cast<void*>(out), impl_->half_buf, nh * sizeof(fftw_complex));
}

void Fft2D::c2r(const std::complex<double>* in, double* out) {
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
  const std::size_t nh = static_cast<std::size_t>(nx_) * ny_half();
  std::memcpy(impl_->half_buf, in, nh * sizeof(fftw_complex));
  fftw_execute(impl_->c2r);
  std::memcpy(static_cast<void*>(out), impl_->real_buf, n * sizeof(double));
}

void Fft2D::c2c_forward(const std::complex<double>* in, std::complex<double>* out) {
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
  std::memcpy(impl_->full_in, in, n * sizeof(fftw_complex));
  fftw_execute(impl_->fwd);
  std::memcpy(static_cast<void*>(out), impl_->full_out, n * sizeof(fftw_complex));
}

void Fft2D::c2c_backward(const std::complex<double>* in, std::complex<double>* out) {
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
  std::memcpy(impl_->full_in, in, n * sizeof(fftw_complex));
  fftw_execute(impl_->bwd);
  std::memcpy(static_cast<void*>(out), impl_->full_out, n * sizeof(fftw_complex));
}

void fft_axis(std::complex<double>* data, int nx, int ny, int axis, int sign) {
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  fftw_complex* buf = fftw_alloc_complex(n);
  std::memcpy(buf, data, n * sizeof(fftw_complex));
  const int len = axis == 0 ? nx : ny;
  const int howmany = axis == 0 ? ny : nx;
  const int stride = axis == 0 ? ny : 1;
  const int dist = axis == 0 ? 1 : ny;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_many_dft(1, &len, howmany, buf, nullptr, stride, dist, buf,
                              nullptr, stride, dist,
                              sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(data), buf, n * sizeof(fftw_complex));
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
}

Fft2D& shared_fft(int nx, int ny) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<Fft2D>> cache;
  auto& slot = cache[{nx, ny}];
  if (!slot) slot = std::make_unique<Fft2D>(nx, ny);
  return *slot;
}

}  // namespace kp
