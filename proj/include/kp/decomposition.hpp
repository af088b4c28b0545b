#pragma once

#include <utility>
#include <vector>

#include "kp/field.hpp"
#include "kp/vector_fields.hpp"

namespace kp {

struct DyadicPiece {
  double lambda = 0.0;
  ComplexField plus_part;
  double t = 0.0;
};

struct HypEllSplit {
  ComplexField hyp;
  ComplexField ell;
  double lambda = 0.0;
  double t = 0.0;
};

// u^+ keeps the xi > 0 coefficients and half of the x-Nyquist row, so that
// u = u^+ + conj(u^+) holds exactly on the grid.
std::pair<ComplexField, ComplexField> split_sign_frequencies(const RealField& u);

// Smooth step: 0 for s <= 0, 1 for s >= 1, h(s) + h(1 - s) = 1.
double smooth_step(double s);

// Partition of unity on xi > 0 in log2(xi)/delta; piece lambda = 2^{delta m}
// is supported in xi in lambda [2^-delta, 2^delta]. Empty pieces are omitted.
std::vector<DyadicPiece> dyadic_decompose(const ComplexField& u_plus, double delta);

// Spatial cutoff in r = v / (3 lambda^2), v = z / t: equal to 1 for
// r in [1 - width, 1 + width], rising from r = (1 - width)/2 and falling to
// zero at r = 1 + 2 width. Zero for lambda < t^{-1/3}.
double hyp_cutoff(double r, double width);
HypEllSplit hyperbolic_elliptic_split(const DyadicPiece& piece, double width);

struct ProfileBin {
  double v_lo = 0.0;
  double v_hi = 0.0;
  std::size_t points = 0;
  double sup_hyp = 0.0;
  double sup_hyp_x = 0.0;
  double sup_ell = 0.0;
  double sup_ell_x = 0.0;
  // Bound shapes evaluated at the bin's geometric center.
  double bound_hyp = 0.0;
  double bound_hyp_x = 0.0;
  double bound_ell = 0.0;
  double bound_ell_x = 0.0;
  // Largest pointwise |f| / (bound(v) ||u||_X) over the bin.
  double ratio_hyp = 0.0;
  double ratio_hyp_x = 0.0;
  double ratio_ell = 0.0;
  double ratio_ell_x = 0.0;
};

struct LambdaRow {
  double lambda = 0.0;
  bool hyperbolic = false;  // lambda >= t^{-1/3}
  double lz_hyp = 0.0;      // ||Lz^+ u_lambda^{hyp,+}||
  double lz_hyp_rhs = 0.0;  // lambda^-2 t^-1/2 (||u_lambda|| + ||Lz dx u_lambda||)
  double ell_weighted = 0.0;  // ||<lambda^-2 v> u_lambda^{ell}||
  double ell_rhs = 0.0;       // lambda^-3 t^-1 (||u_lambda|| + ||Lz dx u_lambda||)
};

struct PointwiseProfile {
  double t = 0.0;
  double delta = 1.0;
  double width = 0.5;
  double x_norm = 0.0;
  std::vector<ProfileBin> bins;
  std::vector<LambdaRow> lambdas;
  // ||v^{1/2} Lz^+ dx u^{hyp,+}|| against t^{-1/2} ||u||_X, and
  // ||v^{-1} dx^3 Ly^2 u^hyp|| against ||u||_X (v^{-1} capped at t^{2/3}).
  double cor_lz = 0.0;
  double cor_lz_rhs = 0.0;
  double cor_ly = 0.0;
  double cor_ly_rhs = 0.0;

  double max_ratio() const;
};

struct HypEllFields {
  RealField hyp;
  RealField ell;
  ComplexField hyp_plus;
  std::vector<DyadicPiece> pieces;
  std::vector<HypEllSplit> splits;
};

// Full pipeline: sign split, dyadic pieces and hyperbolic/elliptic split.
HypEllFields decompose_hyp_ell(const RealField& u, double t, double delta, double width);

PointwiseProfile pointwise_profile(const RealField& u, double t, double delta = 1.0,
                                   double width = 0.5, int bins_per_decade = 8);

}  // namespace kp
