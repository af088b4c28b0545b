// Criteria 1 (spectral algebra), 5 (vector fields) and 9 (resonances).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "acceptance/acceptance.hpp"
#include "common/checks.hpp"
#include "kp/error.hpp"
#include "kp/geometry.hpp"
#include "kp/harness/initial_data.hpp"
#include "kp/spectral.hpp"
#include "kp/vector_fields.hpp"

namespace kp::acceptance {

using std::numbers::pi;

namespace {

RealField uniform_noise(const Grid2D& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealField f = RealField::zeros(g);
  for (auto& s : f.samples) s = u(rng);
  return f;
}

// Gaussian-windowed x-derivative of a smooth random field.
RealField localized(const Grid2D& g, std::uint64_t seed, double width, double bandwidth) {
  RealField f = random_field(g, seed, bandwidth);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      f.at(i, j) *= std::exp(-(g.x(i) * g.x(i) + g.y(j) * g.y(j)) / (width * width));
  return derivative(f, 1, 0);
}

}  // namespace

Report criterion_1() {
  Report r(1);

  const Grid2D box = Grid2D::make(256, 256, 40.0, 40.0);
  RealField gauss = RealField::zeros(box);
  for (int i = 0; i < box.nx; ++i)
    for (int j = 0; j < box.ny; ++j) gauss.at(i, j) = std::exp(-box.x(i) * box.x(i) - box.y(j) * box.y(j));
  const double exact = pi / 2.0;
  r.at_most("Gaussian ||f||^2 vs pi/2, physical side",
            std::abs(std::pow(l2_norm(gauss), 2) - exact) / exact, 1e-10);
  r.at_most("Gaussian ||f||^2 vs pi/2, spectral side",
            std::abs(std::pow(l2_norm(forward_transform(gauss)), 2) - exact) / exact, 1e-10);

  const Grid2D g = Grid2D::make(64, 32, 20.0, 12.0, 3.0, 1.0);
  double parseval = 0.0, trip = 0.0, imag = 0.0, herm = 0.0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const RealField f = uniform_noise(g, seed);
    const SpectralField F = forward_transform(f);
    parseval = std::max(parseval, std::abs(l2_norm(F) - l2_norm(f)) / l2_norm(f));
    trip = std::max(trip, rel_diff(inverse_transform(F), f));
    herm = std::max(herm, hermitian_defect(F));
    for (const auto& v : inverse_transform_complex(F).samples)
      imag = std::max(imag, std::abs(v.imag()) / sup_norm(f));
  }
  r.at_most("Parseval on random fields (relative)", parseval, 1e-12);
  r.at_most("inverse(forward(f)) = f (relative L2)", trip, 1e-13);
  r.at_most("imaginary residue of the inverse transform", imag, 1e-13);

  // Hermitian symmetry through the odd and even symbols.
  const RealField smooth = random_field(g, 11, 2.0);
  const SpectralField S = forward_transform(smooth);
  const double xi_nyq = g.xi(g.nx / 2);
  const Multiplier iom = symbol_from(
      g,
      [xi_nyq](double xi, double eta) {
        return (xi == 0.0 || xi == xi_nyq) ? cplx(0.0) : cplx(0.0, dispersion_omega(xi, eta));
      },
      "i omega");
  for (const Multiplier& m : {symbol_dx(g), symbol_dy(g), symbol_dx_inv(g), iom})
    herm = std::max(herm, hermitian_defect(apply_multiplier(S, m)));
  r.at_most("Hermitian defect after dx, dy, dx^-1, i omega", herm, 1e-12);

  bool zero_line = true;
  for (const Multiplier& m : {symbol_dx_inv(g), symbol_derivative(g, -1, 2), symbol_omega(g)})
    for (int k = 0; k < g.ny; ++k) zero_line = zero_line && m.values[g.index(0, k)] == cplx(0.0);
  r.holds("symbols with a 1/xi factor vanish on xi = 0", zero_line);

  // dx vanishes on the Nyquist row, so the field must carry nothing there.
  const RealField narrow = random_field(g, 12, 1.0);
  r.at_most("dx^-1 dx = identity on zero-mean rows",
            rel_diff(derivative(derivative(narrow, 1, 0), -1, 0), narrow), 1e-13);

  const Multiplier single = symbol_derivative(g, -1, 2);
  const SpectralField a = apply_multiplier(S, single);
  const SpectralField b = apply_multiplier(apply_multiplier(S, symbol_dy(g, 2)), symbol_dx_inv(g));
  r.at_most("dx^-1 dy^2: single multiplier vs composition", l2_norm(a - b) / l2_norm(a), 1e-15);

  const RealField f = uniform_noise(g, 21), h = uniform_noise(g, 22);
  const RealField pf = project_zero_xmodes(f);
  r.at_most("projection idempotent", l2_norm(project_zero_xmodes(pf) - pf) / l2_norm(pf), 1e-15);
  r.at_most("projection self-adjoint",
            std::abs(inner(pf, h) - inner(f, project_zero_xmodes(h))) / (l2_norm(f) * l2_norm(h)),
            1e-12);
  r.at_most("row x-means after projection", max_row_mean(pf), 1e-13);
  return r;
}

Report criterion_5() {
  Report r(5);

  // Carrier far from xi = 0 so that nothing crosses the box within t.
  const Grid2D g = Grid2D::make(192, 192, 120.0, 120.0);
  const RealField u = harness::modulated_gaussian(g, 1.0, {1.5, 0.4, 0.0, 0.0}, 8.0, 8.0);
  const double t = 0.5;
  const RealField ut = linear_at(u, t);
  for (auto [tag, name] : {std::pair{VectorFieldTag::kLx, "Lx"}, std::pair{VectorFieldTag::kLy, "Ly"}}) {
    const RealField before = linear_at(apply_vector_field({tag, 0.0}, u).field, t);
    const auto after = apply_vector_field({tag, t}, ut);
    r.at_most(std::string(name) + "(t) S(t) = S(t) " + name + "(0) (relative L2)",
              rel_diff(after.field, before), 1e-11);
  }

  const Grid2D gz = Grid2D::make(128, 128, 60.0, 60.0);
  const double tz = 2.0;
  double lz = 0.0;
  for (std::uint64_t seed = 3; seed < 8; ++seed) {
    const RealField v = localized(gz, seed, 5.0, 1.0);
    const RealField vx = derivative(v, 1, 0);
    const RealField lhs = apply_vector_field({VectorFieldTag::kLz, tz}, vx).field;
    const RealField ly = apply_vector_field({VectorFieldTag::kLy, tz}, vx).field;
    const RealField ly2 = apply_vector_field({VectorFieldTag::kLy, tz}, ly).field;
    const RealField rhs = (1.0 / (4.0 * tz)) * ly2 -
                          apply_vector_field({VectorFieldTag::kS0, tz}, v).field - 0.5 * v;
    lz = std::max(lz, rel_diff(lhs, rhs));
  }
  r.at_most("Lz dx = -S0 + (1/4t) Ly^2 dx - 1/2 on random fields (relative L2)", lz, 1e-10);

  // w = S u along a small nonlinear solution; fourth-order stencil in t.
  const Grid2D gs = Grid2D::make(256, 256, 120.0, 120.0);
  const RealField u0 = harness::modulated_gaussian(gs, 0.01, {1.0, 0.3, 0.0, 0.0}, 8.0, 8.0);
  const check::Residual su = check::scaling_generator_residual(u0, 1.0, 0.01, 0.0025);
  r.at_most("L(Su) + (u Su)_x relative to (u Su)_x, central half-box", su.relative(), 5e-3);
  const check::Residual mv = check::modified_variable_residual(u0, 1.0, 0.01, 0.0025);
  r.at_most("modified variable S0u - t u u_x identity, relative", mv.relative(), 5e-3);
  return r;
}

Report criterion_9() {
  Report r(9);

  const ResonantTriad base = resonant_triad(1.0, 1.0, std::sqrt(3.0), +1);
  const double w1 = dispersion_omega(base.k1.xi, base.k1.eta);
  const double w2 = dispersion_omega(base.k2.xi, base.k2.eta);
  const double w3 = dispersion_omega(base.k3.xi, base.k3.eta);
  r.note("triad (1,sqrt3) + (1," + fmt(base.k2.eta) + ") = (" + fmt(base.k3.xi) + "," +
         fmt(base.k3.eta) + "), omega " + fmt(w1) + " + " + fmt(w2) + " = " + fmt(w3));
  r.at_most("|eta2 + sqrt3|", std::abs(base.k2.eta + std::sqrt(3.0)), 1e-15);
  r.at_most("|k3 - (2, 0)|", std::hypot(base.k3.xi - 2.0, base.k3.eta), 1e-15);
  r.at_most("|omega1 - 4| + |omega2 - 4| + |omega3 - 8|",
            std::abs(w1 - 4.0) + std::abs(w2 - 4.0) + std::abs(w3 - 8.0), 1e-14);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> xi(-3.0, 3.0), eta(-4.0, 4.0);
  double worst = 0.0, sum_gap = 0.0;
  int built = 0, collinear = 0;
  while (built < 500) {
    const double a = xi(rng), b = xi(rng);
    if (std::abs(a) < 0.05 || std::abs(b) < 0.05 || std::abs(a + b) < 0.05) continue;
    const ResonantTriad tr = resonant_triad(a, b, eta(rng), built % 2 ? +1 : -1);
    ++built;
    worst = std::max(worst, triad_defect(tr));
    sum_gap = std::max(sum_gap, std::abs(tr.k1.xi + tr.k2.xi - tr.k3.xi) +
                                    std::abs(tr.k1.eta + tr.k2.eta - tr.k3.eta));
    const RayVelocity g1 = group_velocity(tr.k1.xi, tr.k1.eta);
    const RayVelocity g2 = group_velocity(tr.k2.xi, tr.k2.eta);
    const RayVelocity g3 = group_velocity(tr.k3.xi, tr.k3.eta);
    const auto same = [](const RayVelocity& p, const RayVelocity& q) {
      return std::hypot(p.v1 - q.v1, p.v2 - q.v2) < 1e-9 * (1.0 + std::hypot(p.v1, p.v2));
    };
    if (same(g1, g2) && same(g2, g3)) ++collinear;
  }
  r.at_most("resonance defect over 500 random triads", worst, 1e-12);
  r.holds("k1 + k2 = k3 exactly", sum_gap == 0.0, "max gap " + fmt(sum_gap));
  r.holds("no triad with three equal group velocities", collinear == 0,
          std::to_string(collinear) + " of 500");

  bool rejected = false;
  try {
    resonant_triad(1.0, -1.0, 0.5, +1);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::kDomain;
  }
  r.holds("xi1 + xi2 = 0 rejected as a domain error", rejected);
  return r;
}

}  // namespace kp::acceptance
