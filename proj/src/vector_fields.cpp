#include "kp/vector_fields.hpp"

#include <algorithm>
#include <cmath>

#include "kp/error.hpp"
#include "kp/spectral.hpp"

namespace kp {

namespace {

template <class F>
double leakage_of(const F& f) {
  const Grid2D& g = f.grid;
  double total = 0.0;
  double outside = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const bool out_x = std::abs(g.x(i) - g.x0) > 0.25 * g.lx;
    for (int j = 0; j < g.ny; ++j) {
      const double m = std::norm(f.samples[g.index(i, j)]);
      total += m;
      if (out_x || std::abs(g.y(j) - g.y0) > 0.25 * g.ly) outside += m;
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

template <class F>
struct Ops {
  double leakage = 0.0;

  F d(const F& u, int ox, int oy) { return derivative(u, ox, oy); }

  F times_x(const F& u) {
    leakage = std::max(leakage, leakage_of(u));
    F out = u;
    const Grid2D& g = u.grid;
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) out.samples[g.index(i, j)] *= g.x(i);
    }
    return out;
  }

  F times_y(const F& u) {
    leakage = std::max(leakage, leakage_of(u));
    F out = u;
    const Grid2D& g = u.grid;
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) out.samples[g.index(i, j)] *= g.y(j);
    }
    return out;
  }

  F times_z(const F& u, double t) {
    leakage = std::max(leakage, leakage_of(u));
    F out = u;
    const Grid2D& g = u.grid;
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        out.samples[g.index(i, j)] *= -g.x(i) + g.y(j) * g.y(j) / (4.0 * t);
      }
    }
    return out;
  }

  F lx(const F& u, double t) {
    if (t == 0.0) return times_x(u);
    return times_x(u) - (3.0 * t) * d(u, 2, 0) - t * d(u, -2, 2);
  }

  F ly(const F& u, double t) {
    if (t == 0.0) return times_y(u);
    return times_y(u) + (2.0 * t) * d(u, -1, 1);
  }

  F lz(const F& u, double t) { return times_z(u, t) + (3.0 * t) * d(u, 2, 0); }

  F s0(const F& u, double t) {
    F out = times_x(d(u, 1, 0)) + times_y(d(u, 0, 1));
    if (t != 0.0) out = out - (3.0 * t) * d(u, 3, 0) + t * d(u, -1, 2);
    return out;
  }
};

void require_positive_time(const VectorFieldId& id) {
  if (!(id.time > 0.0)) {
    throw Error(ErrorKind::kDomain, "Lz-type vector fields require time > 0");
  }
}

ComplexField lz_pm(const ComplexField& u, double t, double sign, double& leakage) {
  const Grid2D& g = u.grid;
  double total = 0.0;
  double negative = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double m = std::norm(u.at(i, j));
      total += m;
      if (-g.x(i) + g.y(j) * g.y(j) / (4.0 * t) < 0.0) negative += m;
    }
  }
  if (total > 0.0 && negative / total > kNegativeZTolerance) {
    throw Error(ErrorKind::kUntrusted,
                "Lz+/-: field has mass fraction " + std::to_string(negative / total) +
                    " on z < 0");
  }
  leakage = std::max(leakage, leakage_of(u));
  ComplexField ux = derivative(u, 1, 0);
  ComplexField out = u;
  const cplx c(0.0, sign * std::sqrt(3.0 * t));
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double z = std::max(0.0, -g.x(i) + g.y(j) * g.y(j) / (4.0 * t));
      out.at(i, j) = std::sqrt(z) * u.at(i, j) + c * ux.at(i, j);
    }
  }
  return out;
}

template <class F>
F apply_common(const VectorFieldId& id, const F& u, double& leakage) {
  Ops<F> ops;
  F out;
  switch (id.tag) {
    case VectorFieldTag::kLx: out = ops.lx(u, id.time); break;
    case VectorFieldTag::kLy: out = ops.ly(u, id.time); break;
    case VectorFieldTag::kLz:
      require_positive_time(id);
      out = ops.lz(u, id.time);
      break;
    case VectorFieldTag::kS0: out = ops.s0(u, id.time); break;
    case VectorFieldTag::kLyDx: out = ops.ly(ops.d(u, 1, 0), id.time); break;
    default: throw Error(ErrorKind::kInvalidInput, "vector field not defined here");
  }
  leakage = ops.leakage;
  return out;
}

template <class F>
XNormReport x_norm_impl(const F& u, double t) {
  Ops<F> ops;
  XNormReport r;
  r.l2 = l2_norm(u);
  r.uxxx = l2_norm(ops.d(u, 3, 0));
  r.ly2dxu = l2_norm(ops.ly(ops.ly(ops.d(u, 1, 0), t), t));
  r.s0u = l2_norm(ops.s0(u, t));
  r.total = std::sqrt(r.l2 * r.l2 + r.uxxx * r.uxxx + r.ly2dxu * r.ly2dxu + r.s0u * r.s0u);
  r.leakage = ops.leakage;
  return r;
}

}  // namespace

double leakage_fraction(const RealField& f) { return leakage_of(f); }
double leakage_fraction(const ComplexField& f) { return leakage_of(f); }

Applied<RealField> apply_vector_field(const VectorFieldId& id, const RealField& u) {
  if (id.tag == VectorFieldTag::kLzPlus || id.tag == VectorFieldTag::kLzMinus) {
    throw Error(ErrorKind::kInvalidInput,
                "Lz+/- produce complex fields; use the ComplexField overload");
  }
  Applied<RealField> out;
  out.field = apply_common(id, u, out.leakage);
  out.trusted = out.leakage <= kLeakageTolerance;
  return out;
}

Applied<ComplexField> apply_vector_field(const VectorFieldId& id, const ComplexField& u) {
  Applied<ComplexField> out;
  if (id.tag == VectorFieldTag::kLzPlus || id.tag == VectorFieldTag::kLzMinus) {
    require_positive_time(id);
    out.field = lz_pm(u, id.time, id.tag == VectorFieldTag::kLzPlus ? 1.0 : -1.0,
                      out.leakage);
  } else {
    out.field = apply_common(id, u, out.leakage);
  }
  out.trusted = out.leakage <= kLeakageTolerance;
  return out;
}

XNormReport x_norm(const RealField& u, double t) { return x_norm_impl(u, t); }
XNormReport x_norm(const ComplexField& u, double t) { return x_norm_impl(u, t); }

double check_anisotropic_sobolev(const RealField& f) {
  const double a = l2_norm(f);
  if (a == 0.0) {
    throw Error(ErrorKind::kDomain, "anisotropic Sobolev ratio undefined for f = 0");
  }
  const double b = l2_norm(derivative(f, 1, 0));
  const double c = l2_norm(derivative(f, 0, 2));
  const double denom = std::pow(a, 0.25) * std::sqrt(b) * std::pow(c, 0.25);
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::kDomain, "anisotropic Sobolev ratio has a vanishing denominator");
  }
  return sup_norm(f) / denom;
}

double check_interpolation_LySobolev(const RealField& u, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::kDomain, "LySobolev check requires t > 0");
  Ops<RealField> ops;
  const RealField ux = ops.d(u, 1, 0);
  const RealField a = ops.ly(ux, t);
  const RealField b = ops.ly(a, t);
  double l4 = 0.0;
  for (double v : a.samples) l4 += v * v * v * v;
  l4 = std::sqrt(l4 * u.grid.cell_area());  // ||a||_{L4}^2
  const double rhs = sup_norm(ux) * l2_norm(b);
  if (!(rhs > 0.0)) {
    throw Error(ErrorKind::kDomain, "LySobolev ratio has a vanishing right-hand side");
  }
  return l4 / rhs;
}

}  // namespace kp
