#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "kp/error.hpp"
#include "kp/snapshot_io.hpp"
#include "kp/spectral.hpp"
#include "unit/support.hpp"

using namespace kp;
using std::numbers::pi;

TEST_CASE("grid validation rejects malformed boxes") {
  CHECK_THROWS_AS(Grid2D::make(7, 8, 1.0, 1.0), Error);
  CHECK_THROWS_AS(Grid2D::make(6, 8, 1.0, 1.0), Error);
  CHECK_THROWS_AS(Grid2D::make(8, 8, 0.0, 1.0), Error);
  CHECK_THROWS_AS(Grid2D::make(8, 8, 1.0, -2.0), Error);
  CHECK_THROWS_AS(Grid2D::make(8, 8, 1.0, std::nan("")), Error);
  const Grid2D g = Grid2D::make(16, 8, 2.0 * pi, 4.0);
  CHECK(g.x_mode(8) == -8);
  CHECK(g.xi(8) < 0.0);
  CHECK(g.xi(1) == doctest::Approx(1.0));
}

TEST_CASE("cosine has two modes of coefficient one half") {
  const Grid2D g = Grid2D::make(32, 16, 10.0, 6.0, 1.3, -0.7);
  RealField f = RealField::zeros(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) f.at(i, j) = std::cos(2.0 * pi * g.x(i) / g.lx);
  const SpectralField F = forward_transform(f);
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < g.ny; ++k) {
      const double expect = (k == 0 && (j == 1 || j == g.nx - 1)) ? 0.5 : 0.0;
      CHECK(std::abs(F.at(j, k) - expect) < 1e-14);
    }
  }
}

TEST_CASE("Gaussian Parseval matches the closed-form integral") {
  const Grid2D g = Grid2D::make(256, 256, 40.0, 40.0);
  RealField f = RealField::zeros(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) f.at(i, j) = std::exp(-g.x(i) * g.x(i) - g.y(j) * g.y(j));
  // Integral of exp(-2x^2 - 2y^2) over the plane.
  const double exact = pi / 2.0;
  const double lhs = std::pow(l2_norm(f), 2);
  const double rhs = std::pow(l2_norm(forward_transform(f)), 2);
  CHECK(std::abs(lhs - exact) / exact < 1e-10);
  CHECK(std::abs(rhs - exact) / exact < 1e-10);
}

TEST_CASE("Parseval and round trip on random fields") {
  const Grid2D g = Grid2D::make(64, 32, 20.0, 12.0, 3.0, 1.0);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    RealField f = RealField::zeros(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& s : f.samples) s = u(rng);
    const SpectralField F = forward_transform(f);
    CHECK(std::abs(l2_norm(F) - l2_norm(f)) / l2_norm(f) < 1e-12);
    CHECK(hermitian_defect(F) < 1e-15);
    CHECK(test::rel_diff(inverse_transform(F), f) < 1e-13);
    const ComplexField c = inverse_transform_complex(F);
    double imag = 0.0;
    for (const auto& v : c.samples) imag = std::max(imag, std::abs(v.imag()));
    CHECK(imag < 1e-13 * sup_norm(f));
  }
}

TEST_CASE("inverse transform rejects broken Hermitian symmetry") {
  const Grid2D g = Grid2D::make(16, 16, 1.0, 1.0);
  SpectralField F = SpectralField::zeros(g);
  CHECK(sup_norm(inverse_transform(F)) == 0.0);
  F.at(1, 2) = cplx(1.0, 0.0);
  try {
    inverse_transform(F);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidInput);
  }
}

TEST_CASE("forward transform rejects non-finite samples") {
  const Grid2D g = Grid2D::make(8, 8, 1.0, 1.0);
  RealField f = RealField::zeros(g);
  f.samples[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(forward_transform(f), Error);
}

TEST_CASE("derivative and antiderivative multipliers") {
  const Grid2D g = Grid2D::make(64, 8, 2.0 * pi, 2.0 * pi);
  RealField s = RealField::zeros(g), c = RealField::zeros(g);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      s.at(i, j) = std::sin(3.0 * g.x(i));
      c.at(i, j) = std::cos(3.0 * g.x(i));
    }
  }
  CHECK(l2_norm(derivative(s, 1, 0) - 3.0 * c) < 1e-12);
  RealField s1 = RealField::zeros(g), c1 = RealField::zeros(g);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      s1.at(i, j) = std::sin(g.x(i));
      c1.at(i, j) = std::cos(g.x(i));
    }
  }
  // The zero-mean antiderivative of sin is -cos.
  CHECK(l2_norm(apply_symbol(s1, symbol_dx_inv(g)) + c1) < 1e-12);

  const RealField r = test::random_field(Grid2D::make(64, 32, 30.0, 20.0), 7, 1.0);
  const RealField back = derivative(derivative(r, 1, 0), -1, 0);
  CHECK(test::rel_diff(back, r) < 1e-13);
}

TEST_CASE("symbols vanish where required and are Hermitian-preserving") {
  const Grid2D g = Grid2D::make(16, 16, 5.0, 7.0);
  const Multiplier inv = symbol_dx_inv(g, 1);
  const Multiplier om = symbol_omega(g);
  for (int k = 0; k < g.ny; ++k) {
    CHECK(inv.values[g.index(0, k)] == cplx(0.0));
    CHECK(om.values[g.index(0, k)] == cplx(0.0));
    CHECK(symbol_dx(g).values[g.index(g.nx / 2, k)] == cplx(0.0));
  }
  const RealField r = test::random_field(g, 3);
  const SpectralField F = forward_transform(r);
  // i omega is odd in xi, so it must vanish on the self-conjugate Nyquist row.
  const double xi_nyq = g.xi(g.nx / 2);
  const Multiplier iom = symbol_from(
      g,
      [xi_nyq](double xi, double eta) {
        return (xi == 0.0 || xi == xi_nyq) ? cplx(0.0) : cplx(0.0, dispersion_omega(xi, eta));
      },
      "i omega");
  for (const Multiplier& m : {symbol_dx(g), symbol_dy(g), symbol_dx_inv(g), iom,
                              symbol_linear_phase(g, 0.7)}) {
    CHECK(hermitian_defect(apply_multiplier(F, m)) < 1e-14);
  }
}

TEST_CASE("single composed multiplier equals the composition") {
  const Grid2D g = Grid2D::make(32, 32, 9.0, 11.0);
  const SpectralField F = forward_transform(test::random_field(g, 5));
  const Multiplier single = symbol_derivative(g, -1, 2);
  const SpectralField a = apply_multiplier(F, single);
  const SpectralField b = apply_multiplier(apply_multiplier(F, symbol_dy(g, 2)), symbol_dx_inv(g));
  CHECK(l2_norm(a - b) <= 1e-15 * l2_norm(a));
  const Multiplier m = compose(symbol_dy(g, 2), symbol_dx_inv(g));
  for (std::size_t n = 0; n < m.values.size(); ++n) CHECK(std::abs(m.values[n] - single.values[n]) <= 1e-15 * std::abs(single.values[n]) + 1e-300);
}

TEST_CASE("apply_multiplier rejects a grid mismatch") {
  const Grid2D g = Grid2D::make(16, 16, 5.0, 7.0);
  const Grid2D h = Grid2D::make(16, 16, 5.0, 8.0);
  CHECK_THROWS_AS(apply_multiplier(SpectralField::zeros(g), symbol_dx(h)), Error);
}

TEST_CASE("zero-mode projection") {
  const Grid2D g = Grid2D::make(32, 16, 2.0 * pi, 3.0);
  RealField f = RealField::zeros(g), c = RealField::zeros(g);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      f.at(i, j) = 1.0 + std::cos(g.x(i));
      c.at(i, j) = std::cos(g.x(i));
    }
  }
  CHECK(l2_norm(project_zero_xmodes(f) - c) < 1e-13);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  RealField r = RealField::zeros(g), q = RealField::zeros(g);
  for (auto& s : r.samples) s = n(rng);
  for (auto& s : q.samples) s = n(rng);
  const RealField p = project_zero_xmodes(r);
  CHECK(max_row_mean(p) < 1e-13);
  CHECK(l2_norm(project_zero_xmodes(p) - p) <= 1e-15 * l2_norm(p));
  const double lhs = inner(p, q);
  const double rhs = inner(r, project_zero_xmodes(q));
  CHECK(std::abs(lhs - rhs) < 1e-12 * l2_norm(r) * l2_norm(q));
}

TEST_CASE("dispersion relation") {
  CHECK(dispersion_omega(1.0, 0.0) == 1.0);
  CHECK(dispersion_omega(1.0, std::sqrt(3.0)) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(dispersion_omega(-0.3, -1.7) == -dispersion_omega(0.3, 1.7));
  CHECK_THROWS_AS(dispersion_omega(0.0, 1.0), Error);
}

TEST_CASE("snapshot files round trip bit for bit") {
  const Grid2D g = Grid2D::make(16, 8, 4.0, 3.0, 0.5, -1.0);
  RealField f = test::random_field(g, 9);
  f.time = 2.75;
  const auto dir = std::filesystem::temp_directory_path() / "kp_snapshot_test";
  std::filesystem::create_directories(dir);
  write_snapshot(f, dir / "snap");
  const RealField r = read_snapshot(dir / "snap.json");
  CHECK(r.grid == g);
  CHECK(r.time == 2.75);
  CHECK(r.samples == f.samples);
  try {
    read_snapshot(dir / "missing");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIo);
  }
  std::filesystem::remove_all(dir);
}
