#include "kp/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kp/error.hpp"
#include "kp/fft.hpp"
#include "kp/spectral.hpp"

namespace kp {

namespace {

// Applies an x-frequency weight w(j) to a complex field using x-only transforms.
template <class W>
ComplexField weight_x_modes(const ComplexField& f, W&& weight) {
  const Grid2D& g = f.grid;
  ComplexField out = f;
  fft_axis(out.samples.data(), g.nx, g.ny, 0, -1);
  for (int j = 0; j < g.nx; ++j) {
    const double w = weight(j) / g.nx;
    for (int k = 0; k < g.ny; ++k) out.samples[g.index(j, k)] *= w;
  }
  fft_axis(out.samples.data(), g.nx, g.ny, 0, +1);
  return out;
}

// Positive x-frequency of mode j, with the Nyquist row counted as positive.
double positive_xi(const Grid2D& g, int j) {
  return g.is_x_nyquist(j) ? -g.xi(j) : g.xi(j);
}

double bracket(double a) { return std::sqrt(1.0 + a * a); }

double v_at(const Grid2D& g, int i, int j, double t) {
  return (-g.x(i) + g.y(j) * g.y(j) / (4.0 * t)) / t;
}

}  // namespace

std::pair<ComplexField, ComplexField> split_sign_frequencies(const RealField& u) {
  const Grid2D& g = u.grid;
  ComplexField plus = weight_x_modes(to_complex(u), [&](int j) {
    if (g.is_x_nyquist(j)) return 0.5;
    return g.x_mode(j) > 0 ? 1.0 : 0.0;
  });
  return {plus, conj(plus)};
}

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

std::vector<DyadicPiece> dyadic_decompose(const ComplexField& u_plus, double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw Error(ErrorKind::kInvalidInput, "dyadic_decompose: delta must lie in (0, 1]");
  }
  const Grid2D& g = u_plus.grid;
  ComplexField spec = u_plus;
  fft_axis(spec.samples.data(), g.nx, g.ny, 0, -1);
  std::vector<double> row_mass(g.nx, 0.0);
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < g.ny; ++k) row_mass[j] += std::norm(spec.samples[g.index(j, k)]);
  }
  const int m_lo = static_cast<int>(std::floor(std::log2(g.xi_min()) / delta)) - 1;
  const int m_hi = static_cast<int>(std::ceil(std::log2(g.xi_max()) / delta)) + 1;
  std::vector<DyadicPiece> pieces;
  for (int m = m_lo; m <= m_hi; ++m) {
    std::vector<double> w(g.nx, 0.0);
    bool any = false;
    for (int j = 0; j < g.nx; ++j) {
      const double xi = positive_xi(g, j);
      if (!(xi > 0.0)) continue;
      const double s = std::log2(xi) / delta - m;
      w[j] = smooth_step(1.0 - std::abs(s));
      if (w[j] > 0.0 && row_mass[j] > 0.0) any = true;
    }
    if (!any) continue;
    ComplexField piece = spec;
    for (int j = 0; j < g.nx; ++j) {
      const double s = w[j] / g.nx;
      for (int k = 0; k < g.ny; ++k) piece.samples[g.index(j, k)] *= s;
    }
    fft_axis(piece.samples.data(), g.nx, g.ny, 0, +1);
    pieces.push_back(DyadicPiece{std::exp2(delta * m), std::move(piece), u_plus.time});
  }
  return pieces;
}

double hyp_cutoff(double r, double width) {
  const double lo = 0.5 * (1.0 - width);
  const double a = 1.0 - width;
  const double b = 1.0 + width;
  if (r <= lo || r >= 1.0 + 2.0 * width) return 0.0;
  if (r < a) return smooth_step((r - lo) / (a - lo));
  if (r > b) return smooth_step((1.0 + 2.0 * width - r) / width);
  return 1.0;
}

HypEllSplit hyperbolic_elliptic_split(const DyadicPiece& piece, double width) {
  if (!(piece.t >= 1.0)) {
    throw Error(ErrorKind::kDomain, "hyperbolic_elliptic_split: requires t >= 1");
  }
  if (!(width > 0.0) || width >= 1.0) {
    throw Error(ErrorKind::kInvalidInput, "hyperbolic_elliptic_split: width must lie in (0, 1)");
  }
  const Grid2D& g = piece.plus_part.grid;
  HypEllSplit out{ComplexField::zeros(g, piece.t), piece.plus_part, piece.lambda, piece.t};
  if (piece.lambda < std::cbrt(1.0 / piece.t)) return out;
  const double scale = 3.0 * piece.lambda * piece.lambda;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double chi = hyp_cutoff(v_at(g, i, j, piece.t) / scale, width);
      if (chi == 0.0) continue;
      const cplx val = piece.plus_part.at(i, j);
      out.hyp.at(i, j) = chi * val;
      out.ell.at(i, j) = val - chi * val;
    }
  }
  return out;
}

HypEllFields decompose_hyp_ell(const RealField& u, double t, double delta, double width) {
  if (!(t >= 1.0)) throw Error(ErrorKind::kDomain, "decomposition requires t >= 1");
  const Grid2D& g = u.grid;
  HypEllFields out;
  auto [plus, minus] = split_sign_frequencies(u);
  (void)minus;
  out.pieces = dyadic_decompose(plus, delta);
  out.hyp_plus = ComplexField::zeros(g, u.time);
  for (auto& p : out.pieces) {
    p.t = t;
    out.splits.push_back(hyperbolic_elliptic_split(p, width));
    const auto& h = out.splits.back().hyp.samples;
    for (std::size_t n = 0; n < h.size(); ++n) out.hyp_plus.samples[n] += h[n];
  }
  out.hyp = RealField::zeros(g, u.time);
  for (std::size_t n = 0; n < out.hyp.samples.size(); ++n) {
    out.hyp.samples[n] = 2.0 * out.hyp_plus.samples[n].real();
  }
  out.ell = u - out.hyp;
  return out;
}

double PointwiseProfile::max_ratio() const {
  double m = 0.0;
  for (const auto& b : bins) {
    m = std::max({m, b.ratio_hyp, b.ratio_hyp_x, b.ratio_ell, b.ratio_ell_x});
  }
  return m;
}

PointwiseProfile pointwise_profile(const RealField& u, double t, double delta, double width,
                                   int bins_per_decade) {
  if (!(t >= 1.0)) throw Error(ErrorKind::kDomain, "pointwise_profile: requires t >= 1");
  if (bins_per_decade < 1) {
    throw Error(ErrorKind::kInvalidInput, "pointwise_profile: bins_per_decade must be >= 1");
  }
  const Grid2D& g = u.grid;
  PointwiseProfile prof;
  prof.t = t;
  prof.delta = delta;
  prof.width = width;
  const XNormReport xn = x_norm(u, t);
  prof.x_norm = xn.total;
  if (xn.total == 0.0) return prof;

  HypEllFields parts = decompose_hyp_ell(u, t, delta, width);
  const RealField hyp_x = derivative(parts.hyp, 1, 0);
  const RealField ell_x = derivative(parts.ell, 1, 0);
  const double floor = 1e-8 * sup_norm(u);
  const double t23 = std::pow(t, 2.0 / 3.0);

  auto hyp_bound = [&](double v) {
    return v > 0.0 ? std::min(std::pow(v, -0.75), std::pow(v, -0.375)) / t : 0.0;
  };
  auto hyp_x_bound = [&](double v) {
    return v > 0.0 ? std::min(std::pow(v, -0.25), std::pow(v, 0.125)) / t : 0.0;
  };
  auto ell_bound = [&](double v) {
    const double b = bracket(t23 * v);
    return std::pow(t, -0.75) * std::pow(b, -0.75) * (1.0 + std::log(b));
  };
  auto ell_x_bound = [&](double v) {
    return std::pow(t, -13.0 / 12.0) * std::pow(bracket(t23 * v), -0.25);
  };

  std::map<std::pair<int, int>, ProfileBin> bins;
  const double xnorm = xn.total;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double v = v_at(g, i, j, t);
      const std::size_t n = g.index(i, j);
      const double a = std::abs(parts.hyp.samples[n]);
      const double b = std::abs(hyp_x.samples[n]);
      const double c = std::abs(parts.ell.samples[n]);
      const double d = std::abs(ell_x.samples[n]);
      if (std::max({a, c}) <= floor && std::max(b, d) <= floor) continue;
      const int sign = v >= 0.0 ? 1 : -1;
      const int idx = static_cast<int>(
          std::floor(bins_per_decade * std::log10(std::max(std::abs(v), 1e-12))));
      ProfileBin& bin = bins[{sign, idx}];
      ++bin.points;
      bin.sup_hyp = std::max(bin.sup_hyp, a);
      bin.sup_hyp_x = std::max(bin.sup_hyp_x, b);
      bin.sup_ell = std::max(bin.sup_ell, c);
      bin.sup_ell_x = std::max(bin.sup_ell_x, d);
      if (v > 0.0) {
        bin.ratio_hyp = std::max(bin.ratio_hyp, a / (hyp_bound(v) * xnorm));
        bin.ratio_hyp_x = std::max(bin.ratio_hyp_x, b / (hyp_x_bound(v) * xnorm));
      }
      bin.ratio_ell = std::max(bin.ratio_ell, c / (ell_bound(v) * xnorm));
      bin.ratio_ell_x = std::max(bin.ratio_ell_x, d / (ell_x_bound(v) * xnorm));
    }
  }
  for (auto& [key, bin] : bins) {
    const double lo = std::pow(10.0, static_cast<double>(key.second) / bins_per_decade);
    const double hi = std::pow(10.0, static_cast<double>(key.second + 1) / bins_per_decade);
    bin.v_lo = key.first > 0 ? lo : -hi;
    bin.v_hi = key.first > 0 ? hi : -lo;
    const double center = key.first * std::sqrt(lo * hi);
    bin.bound_hyp = hyp_bound(center);
    bin.bound_hyp_x = hyp_x_bound(center);
    bin.bound_ell = ell_bound(center);
    bin.bound_ell_x = ell_x_bound(center);
    prof.bins.push_back(bin);
  }
  std::sort(prof.bins.begin(), prof.bins.end(),
            [](const ProfileBin& x, const ProfileBin& y) { return x.v_lo < y.v_lo; });

  // Airy-operator estimates per dyadic piece.
  const double t_third = std::cbrt(1.0 / t);
  for (std::size_t p = 0; p < parts.pieces.size(); ++p) {
    const DyadicPiece& piece = parts.pieces[p];
    const HypEllSplit& split = parts.splits[p];
    LambdaRow row;
    row.lambda = piece.lambda;
    row.hyperbolic = piece.lambda >= t_third;
    if (row.hyperbolic) {
      const double base =
          l2_norm(piece.plus_part) +
          l2_norm(apply_vector_field({VectorFieldTag::kLz, t}, derivative(piece.plus_part, 1, 0))
                      .field);
      const double lam2 = piece.lambda * piece.lambda;
      row.lz_hyp = l2_norm(apply_vector_field({VectorFieldTag::kLzPlus, t}, split.hyp).field);
      row.lz_hyp_rhs = base / (lam2 * std::sqrt(t));
      ComplexField weighted = split.ell;
      for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) weighted.at(i, j) *= bracket(v_at(g, i, j, t) / lam2);
      }
      row.ell_weighted = l2_norm(weighted);
      row.ell_rhs = base / (lam2 * piece.lambda * t);
    }
    prof.lambdas.push_back(row);
  }

  // Corollary-type weighted norms of the hyperbolic part.
  {
    // The weight vanishes on z < 0, where the spectral derivative leaves
    // small ringing that the guarded Lz^+ would reject.
    const ComplexField f = derivative(parts.hyp_plus, 1, 0);
    const ComplexField fx = derivative(f, 1, 0);
    const cplx c(0.0, std::sqrt(3.0 * t));
    ComplexField a = f;
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        const double vp = std::max(0.0, v_at(g, i, j, t));
        a.at(i, j) = std::sqrt(vp) * (std::sqrt(vp * t) * f.at(i, j) + c * fx.at(i, j));
      }
    }
    prof.cor_lz = l2_norm(a);
    prof.cor_lz_rhs = xnorm / std::sqrt(t);
    RealField b = derivative(apply_vector_field({VectorFieldTag::kLy, t},
                                                apply_vector_field({VectorFieldTag::kLy, t},
                                                                   parts.hyp)
                                                    .field)
                                 .field,
                             3, 0);
    const double vmin = 1.0 / t23;
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) b.at(i, j) /= std::max(std::abs(v_at(g, i, j, t)), vmin);
    }
    prof.cor_ly = l2_norm(b);
    prof.cor_ly_rhs = xnorm;
  }
  return prof;
}

}  // namespace kp
