#include "kp/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kp/error.hpp"

namespace kp {

RealField RealField::zeros(const Grid2D& grid, double time) {
  return RealField{grid, std::vector<double>(grid.size(), 0.0), time};
}

ComplexField ComplexField::zeros(const Grid2D& grid, double time) {
  return ComplexField{grid, std::vector<cplx>(grid.size(), 0.0), time};
}

SpectralField SpectralField::zeros(const Grid2D& grid, double time) {
  return SpectralField{grid, std::vector<cplx>(grid.size(), 0.0), time};
}

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (double v : f.samples) s += v * v;
  return std::sqrt(s * f.grid.cell_area());
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const cplx& v : f.samples) s += std::norm(v);
  return std::sqrt(s * f.grid.cell_area());
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const cplx& v : f.coeffs) s += std::norm(v);
  return std::sqrt(s * f.grid.lx * f.grid.ly);
}

double sup_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const ComplexField& f) {
  double m = 0.0;
  for (const cplx& v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

double inner(const RealField& f, const RealField& g) {
  require_same_grid(f.grid, g.grid, "inner");
  double s = 0.0;
  for (std::size_t n = 0; n < f.samples.size(); ++n) {
    s += f.samples[n] * g.samples[n];
  }
  return s * f.grid.cell_area();
}

cplx inner(const ComplexField& f, const ComplexField& g) {
  require_same_grid(f.grid, g.grid, "inner");
  cplx s = 0.0;
  for (std::size_t n = 0; n < f.samples.size(); ++n) {
    s += f.samples[n] * std::conj(g.samples[n]);
  }
  return s * f.grid.cell_area();
}

cplx inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid, g.grid, "inner");
  cplx s = 0.0;
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    s += f.coeffs[n] * std::conj(g.coeffs[n]);
  }
  return s * (f.grid.lx * f.grid.ly);
}

void require_finite(const RealField& f, const char* where) {
  for (double v : f.samples) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kInvalidInput,
                  std::string(where) + ": non-finite sample");
    }
  }
}

void require_finite(const ComplexField& f, const char* where) {
  for (const cplx& v : f.samples) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::kInvalidInput,
                  std::string(where) + ": non-finite sample");
    }
  }
}

namespace {

std::vector<double>& storage(RealField& f) { return f.samples; }
std::vector<cplx>& storage(ComplexField& f) { return f.samples; }
std::vector<cplx>& storage(SpectralField& f) { return f.coeffs; }
const std::vector<double>& storage(const RealField& f) { return f.samples; }
const std::vector<cplx>& storage(const ComplexField& f) { return f.samples; }
const std::vector<cplx>& storage(const SpectralField& f) { return f.coeffs; }

template <class F, class Op>
F combine(const F& a, const F& b, const char* where, Op op) {
  require_same_grid(a.grid, b.grid, where);
  F out = a;
  auto& dst = storage(out);
  const auto& src = storage(b);
  for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = op(dst[n], src[n]);
  return out;
}

}  // namespace

RealField operator+(const RealField& a, const RealField& b) {
  return combine(a, b, "add", [](double x, double y) { return x + y; });
}
RealField operator-(const RealField& a, const RealField& b) {
  return combine(a, b, "sub", [](double x, double y) { return x - y; });
}
RealField operator*(double s, const RealField& a) {
  RealField out = a;
  for (double& v : out.samples) v *= s;
  return out;
}
ComplexField operator+(const ComplexField& a, const ComplexField& b) {
  return combine(a, b, "add", [](cplx x, cplx y) { return x + y; });
}
ComplexField operator-(const ComplexField& a, const ComplexField& b) {
  return combine(a, b, "sub", [](cplx x, cplx y) { return x - y; });
}
ComplexField operator*(cplx s, const ComplexField& a) {
  ComplexField out = a;
  for (cplx& v : out.samples) v *= s;
  return out;
}
ComplexField operator*(double s, const ComplexField& a) { return cplx(s) * a; }
SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, "add", [](cplx x, cplx y) { return x + y; });
}
SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  return combine(a, b, "sub", [](cplx x, cplx y) { return x - y; });
}
SpectralField operator*(cplx s, const SpectralField& a) {
  SpectralField out = a;
  for (cplx& v : out.coeffs) v *= s;
  return out;
}

RealField multiply(const RealField& a, const RealField& b) {
  return combine(a, b, "multiply", [](double x, double y) { return x * y; });
}
ComplexField multiply(const ComplexField& a, const ComplexField& b) {
  return combine(a, b, "multiply", [](cplx x, cplx y) { return x * y; });
}

ComplexField to_complex(const RealField& f) {
  ComplexField out{f.grid, std::vector<cplx>(f.samples.begin(), f.samples.end()),
                   f.time};
  return out;
}

RealField real_part(const ComplexField& f) {
  RealField out = RealField::zeros(f.grid, f.time);
  for (std::size_t n = 0; n < f.samples.size(); ++n) {
    out.samples[n] = f.samples[n].real();
  }
  return out;
}

ComplexField conj(const ComplexField& f) {
  ComplexField out = f;
  for (cplx& v : out.samples) v = std::conj(v);
  return out;
}

}  // namespace kp
