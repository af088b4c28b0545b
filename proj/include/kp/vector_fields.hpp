#pragma once

#include "kp/field.hpp"

namespace kp {

enum class VectorFieldTag { kLx, kLy, kLz, kLzPlus, kLzMinus, kS0, kLyDx };

struct VectorFieldId {
  VectorFieldTag tag = VectorFieldTag::kLy;
  double time = 0.0;
};

// Coordinate factors are multiplied in physical space using the absolute
// sample coordinates, which jump at the box edges. `leakage` is the largest
// L2 mass fraction outside the central half-box among the fields that were
// multiplied by a coordinate; results with leakage > kLeakageTolerance are
// marked untrusted.
inline constexpr double kLeakageTolerance = 1e-6;
inline constexpr double kNegativeZTolerance = 1e-8;

template <class F>
struct Applied {
  F field;
  double leakage = 0.0;
  bool trusted = true;
};

// Lx = x - 3t dx^2 - t dx^-2 dy^2, Ly = y + 2t dx^-1 dy, Lz = z + 3t dx^2,
// Lz^{+-} = sqrt(z) +- i sqrt(3t) dx, S0 = x dx + y dy - 3t dx^3 + t dx^-1 dy^2,
// LyDx = Ly dx.
// The real overload rejects LzPlus/LzMinus (complex-valued results).
Applied<RealField> apply_vector_field(const VectorFieldId& id, const RealField& u);
Applied<ComplexField> apply_vector_field(const VectorFieldId& id, const ComplexField& u);

double leakage_fraction(const RealField& f);
double leakage_fraction(const ComplexField& f);

struct XNormReport {
  double l2 = 0.0;
  double uxxx = 0.0;
  double ly2dxu = 0.0;
  double s0u = 0.0;
  double total = 0.0;
  double leakage = 0.0;
};

// ||u||_X^2 = ||u||^2 + ||u_xxx||^2 + ||Ly^2 dx u||^2 + ||S0 u||^2 at time t.
XNormReport x_norm(const RealField& u, double t);
XNormReport x_norm(const ComplexField& u, double t);

// sup|f| / (||f||^{1/4} ||f_x||^{1/2} ||f_yy||^{1/4}).
double check_anisotropic_sobolev(const RealField& f);
// ||dx Ly u||_{L4}^2 / (||u_x||_inf ||dx Ly^2 u||_{L2}).
double check_interpolation_LySobolev(const RealField& u, double t);

}  // namespace kp
