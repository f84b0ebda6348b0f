#include <cmath>
#include <numbers>

#include "doctest.h"
#include "htype/errors.hpp"
#include "htype/laguerre.hpp"
#include "htype/transform.hpp"
#include "test_support.hpp"

using namespace htype;
using testsupport::random_spectrum;
using testsupport::rel_diff;

TEST_CASE("inverse then forward recovers random spectra") {
  struct Case {
    int d, p, M, n_s;
    double L;
  };
  for (Case c : {Case{1, 1, 12, 32, 40.0}, Case{2, 2, 10, 16, 30.0}, Case{2, 3, 6, 8, 20.0}}) {
    auto G = build_group(c.d, c.p);
    auto grid = make_lattice(c.p, c.L, c.n_s);
    auto S = random_spectrum(G, c.M, grid, 11);
    auto f = inverse_transform(S);
    auto back = forward_transform(f, c.M);
    CHECK_MESSAGE(rel_diff(back, S) < 1e-10, "d=" << c.d << " p=" << c.p);
    CHECK(plancherel_norm(S) == doctest::Approx(lr_norm(f, 2.0)).epsilon(1e-10));
  }
}

TEST_CASE("zero field and linearity") {
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 24.0, 8);
  auto S1 = random_spectrum(G, 6, grid, 1), S2 = random_spectrum(G, 6, grid, 2);
  auto f1 = inverse_transform(S1), f2 = inverse_transform(S2);
  CHECK(testsupport::max_abs(forward_transform(inverse_transform(zero_spectrum(G, 6, grid)), 6)) == 0.0);
  RadialField mix = f1;
  cplx a(0.3, -1.2), b(2.0, 0.5);
  for (size_t i = 0; i < mix.v.size(); ++i) mix.v[i] = a * f1.v[i] + b * f2.v[i];
  auto lhs = forward_transform(mix, 6);
  auto rhs = a * forward_transform(f1, 6) + b * forward_transform(f2, 6);
  CHECK(testsupport::max_abs_diff(lhs, rhs) <= 1e-12 * testsupport::max_abs(rhs));
}

TEST_CASE("single mode recovered without leakage") {
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 24.0, 16);
  auto S = zero_spectrum(G, 8, grid);
  long b0 = 3 * 16 + 14;  // lambda index (3, -2)
  S.at(5, b0) = 1.0;
  auto back = forward_transform(inverse_transform(S), 8);
  double off = 0;
  for (int m = 0; m <= 8; ++m)
    for (long b = 0; b < back.n_bins(); ++b)
      if (m != 5 || b != b0) off = std::max(off, std::abs(back.at(m, b)));
  CHECK(std::abs(back.at(5, b0) - 1.0) < 1e-10);
  CHECK(off < 1e-10);
}

TEST_CASE("lowest Laguerre mode reduces to a Gaussian sum") {
  auto G = build_group(2, 1);
  auto grid = make_lattice(1, 16.0, 16);
  auto S = zero_spectrum(G, 3, grid);
  for (long b = 0; b < S.n_bins(); ++b) {
    double lam = grid.dlam() * grid.freq_index(b, 0);
    if (lam != 0) S.at(0, b) = std::exp(-lam * lam) * cplx(1.0, 0.3 * lam);
  }
  std::vector<PhysPoint> pts{{0.0, {0.0}}, {0.7, {1.3}}, {2.1, {-4.0}}};
  auto got = evaluate_at(S, pts);
  double C = std::pow(2 * std::numbers::pi, -3.0) * grid.dlam();
  for (size_t q = 0; q < pts.size(); ++q) {
    cplx want = 0;
    for (long b = 0; b < S.n_bins(); ++b) {
      double lam = grid.dlam() * grid.freq_index(b, 0);
      if (lam == 0) continue;
      double al = std::abs(lam);
      want += std::polar(1.0, -lam * pts[q].s[0]) * S.at(0, b) * std::exp(-al * pts[q].rho * pts[q].rho / 4) * al * al;
    }
    CHECK(std::abs(got[q] - C * want) < 1e-14);
  }
}

TEST_CASE("evaluate_at agrees with the gridded inverse") {
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 20.0, 8);
  auto S = random_spectrum(G, 5, grid, 3);
  auto f = inverse_transform(S);
  std::vector<PhysPoint> pts;
  std::vector<cplx> want;
  for (int i : {0, 7, 19})
    for (long k : {0L, 9L, 37L, 63L}) {
      pts.push_back({f.rho.rho[i], lattice_point(grid, k)});
      want.push_back(f.at(i, k));
    }
  auto got = evaluate_at(S, pts);
  double scale = lr_norm(f, INFINITY);
  for (size_t q = 0; q < pts.size(); ++q) CHECK(std::abs(got[q] - want[q]) <= 1e-12 * scale);
}

TEST_CASE("padded physical grids round trip") {
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 24.0, 8);
  auto fine = make_lattice(2, 24.0, 20);
  auto S = random_spectrum(G, 6, grid, 5);
  auto rg = default_radial_grid(S);
  auto f = inverse_transform(S, rg, fine);
  auto back = forward_transform(f, 6, grid);
  CHECK(rel_diff(back, S) < 1e-10);
  CHECK(lr_norm(f, 2.0) == doctest::Approx(plancherel_norm(S)).epsilon(1e-10));
}

TEST_CASE("forward transform rejects unresolved radial grids") {
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 24.0, 8);
  auto S = random_spectrum(G, 6, grid, 5);
  auto rg = default_radial_grid(S);
  auto f = inverse_transform(S, radial_grid(rg.R, rg.size() / 3), grid);
  try {
    forward_transform(f, 6);
    FAIL("expected ResolutionInsufficient");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ResolutionInsufficient);
  }
  CHECK_THROWS_AS(forward_transform(f, 100000), Error);
}

TEST_CASE("convolution of spectra") {
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 24.0, 8);
  auto A = random_spectrum(G, 4, grid, 1), B = random_spectrum(G, 4, grid, 2);
  auto one = zero_spectrum(G, 4, grid);
  for (auto& v : one.c) v = 1.0;
  CHECK(convolve(A, B).c == convolve(B, A).c);
  CHECK(convolve(A, one).c == A.c);
  CHECK_THROWS_AS(convolve(A, zero_spectrum(G, 5, grid)), Error);
}

TEST_CASE("convolution theorem against direct group convolution") {
  // Heisenberg group; f_i(z, s) = (1 - 2 b_i s^2) exp(-a_i |z|^2 - b_i s^2) decays fast
  // enough that the periodic box is immaterial, and its s-mean vanishes so the
  // dropped lambda = 0 bin carries no mass.
  auto G = build_group(1, 1);
  double a1 = 1.0, b1 = 0.5, a2 = 0.6, b2 = 1.0;
  auto f = [](double a, double b, double z1, double z2, double s) {
    return (1 - 2 * b * s * s) * std::exp(-a * (z1 * z1 + z2 * z2) - b * s * s);
  };
  int M = 80;
  auto grid = make_lattice(1, 48.0, 96);
  auto rg = resolved_radial_grid(M, 1, grid.lam_min(), grid.lam_max());
  RadialField F1{G, rg, grid, {}}, F2{G, rg, grid, {}};
  for (int i = 0; i < rg.size(); ++i)
    for (long k = 0; k < grid.n_bins(); ++k) {
      double s = lattice_point(grid, k)[0];
      F1.v.push_back(f(a1, b1, rg.rho[i], 0, s));
      F2.v.push_back(f(a2, b2, rg.rho[i], 0, s));
    }
  auto P = convolve(forward_transform(F1, M), forward_transform(F2, M));
  // Direct quadrature of int f1(w, sigma) f2(h^{-1} g) dw dsigma, h^{-1} g = (z - w, s - sigma - <w, U z>/2).
  QuadRule qw = composite_gauss(12, 12, -6.0, 6.0);
  QuadRule qs = composite_gauss(12, 12, -9.0, 9.0);
  std::vector<PhysPoint> pts{{0.0, {0.0}}, {0.8, {0.5}}, {1.5, {-1.0}}};
  auto got = evaluate_at(P, pts);
  for (size_t q = 0; q < pts.size(); ++q) {
    double z1 = pts[q].rho, z2 = 0, s = pts[q].s[0];
    double acc = 0;
    for (size_t i = 0; i < qw.x.size(); ++i)
      for (size_t j = 0; j < qw.x.size(); ++j) {
        double w1 = qw.x[i], w2 = qw.x[j];
        double br = bracket(G, 0, {w1, w2}, {z1, z2});
        for (size_t k = 0; k < qs.x.size(); ++k) {
          double sg = qs.x[k];
          acc += qw.w[i] * qw.w[j] * qs.w[k] * f(a1, b1, w1, w2, sg) * f(a2, b2, z1 - w1, z2 - w2, s - sg - 0.5 * br);
        }
      }
    CHECK(std::abs(got[q] - acc) <= 1e-3 * std::abs(acc));
  }
}
