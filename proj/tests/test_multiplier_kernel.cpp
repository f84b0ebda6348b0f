#include <cmath>
#include <numbers>

#include "doctest.h"
#include "htype/errors.hpp"
#include "htype/multiplier_kernel.hpp"
#include "htype/supnorm.hpp"
#include "htype/transform.hpp"

using namespace htype;

TEST_CASE("radial fourier factors are sphere averages of plane waves") {
  constexpr double pi = std::numbers::pi;
  auto circle = composite_gauss(16, 16, 0.0, 2.0 * pi);
  auto polar = composite_gauss(16, 16, 0.0, pi);
  for (double y : {0.0, 0.7, 3.2, 11.5}) {
    CHECK(radial_fourier_factor(1, y) == doctest::Approx(2.0 * std::cos(y)));
    double a2 = 0, a3 = 0;
    for (size_t i = 0; i < circle.x.size(); ++i) a2 += circle.w[i] * std::cos(y * std::cos(circle.x[i]));
    for (size_t i = 0; i < polar.x.size(); ++i)
      a3 += 2.0 * pi * polar.w[i] * std::cos(y * std::cos(polar.x[i])) * std::sin(polar.x[i]);
    CHECK(std::abs(radial_fourier_factor(2, y) - a2) <= 1e-12 * 2 * pi);
    CHECK(std::abs(radial_fourier_factor(3, y) - a3) <= 1e-12 * 4 * pi);
  }
  CHECK_THROWS_AS(radial_fourier_factor(4, 1.0), Error);
}

TEST_CASE("continuum kernel agrees with the lattice kernel on a large box") {
  LPProfile P;
  for (int p : {1, 2}) {
    int d = p, M = 3, j = 2;
    auto G = build_group(d, p);
    auto grid = make_lattice(p, p == 1 ? 64.0 : 24.0, p == 1 ? 2048 : 512);
    for (double t : {0.0, 0.3}) {
      auto K = MultiplierKernel::lp(d, p, M, P, j).propagated(t);
      auto S = K.to_spectrum(G, grid);
      std::vector<PhysPoint> pts;
      for (double rho : {0.0, 0.3, 1.1})
        for (double s : {0.0, 0.4, 2.0, 5.0}) pts.push_back({rho, std::vector<double>(p, s)});
      auto lat = evaluate_at(S, pts);
      double err = 0, mx = std::abs(MultiplierKernel::lp(d, p, M, P, j).evaluate(0, 0));
      for (size_t i = 0; i < pts.size(); ++i) {
        double r = std::sqrt(p * pts[i].s[0] * pts[i].s[0]);
        cplx c = K.evaluate(pts[i].rho, r);
        err = std::max(err, std::abs(c - lat[i]));
      }
      CHECK(err <= 1e-6 * mx);
    }
  }
}

TEST_CASE("continuum kernel dilation identity") {
  LPProfile P;
  int d = 2, p = 2, M = 5, N = 8;
  for (int j : {-2, -1, 1, 2})
    for (double t : {0.25, 1.0, 4.0}) {
      auto lhs = MultiplierKernel::lp(d, p, M, P, j).propagated(t);
      auto base = MultiplierKernel::lp(d, p, M, P, 0).propagated(std::ldexp(t, 2 * j));
      auto dil = base.dilated(j);
      CHECK(dil.time() == t);
      for (double rho : {0.0, 0.4, 1.3})
        for (double r : {0.0, 0.7, 3.0}) {
          cplx a = lhs.evaluate(rho, r);
          cplx b = std::ldexp(1.0, N * j) * base.evaluate(std::ldexp(rho, j), std::ldexp(r, 2 * j));
          cplx c = std::ldexp(1.0, N * j) * dil.evaluate(rho, r);
          double scale = std::abs(lhs.evaluate(0, 0));
          CHECK(std::abs(a - b) <= 1e-9 * scale);
          CHECK(std::abs(a - c) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("continuum Sobolev norm matches the lattice Plancherel sum") {
  LPProfile P;
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 96.0, 192);
  auto K = MultiplierKernel::lp(2, 2, 1, P, 0);
  for (double sig : {0.0, 1.0, 3.5}) {
    double lat = sobolev_norm(K.to_spectrum(G, grid), sig, 2.0, true).value;
    CHECK(K.hdot_norm(sig) == doctest::Approx(lat).epsilon(1e-6));
  }
  CHECK(K.propagated(7.0).hdot_norm(1.0) == doctest::Approx(K.hdot_norm(1.0)).epsilon(1e-14));
  CHECK(K.scaled(3.0).hdot_norm(0.0) == doctest::Approx(3.0 * K.hdot_norm(0.0)).epsilon(1e-14));
}

TEST_CASE("continuum sup") {
  LPProfile P;
  auto K = MultiplierKernel::lp(1, 1, 3, P, 2);
  auto s0 = K.sup();
  CHECK(s0.value == doctest::Approx(std::abs(K.evaluate(0, 0))).epsilon(1e-12));
  CHECK(s0.value >= s0.coarse);

  auto G = build_group(1, 1);
  auto grid = make_lattice(1, 64.0, 2048);
  for (double t : {0.5, 2.0}) {
    auto Kt = K.propagated(t);
    auto cs = Kt.sup();
    auto ls = lattice_sup(Kt.to_spectrum(G, grid));
    CHECK(cs.value == doctest::Approx(ls.value).epsilon(1e-5));
    CHECK(std::abs(Kt.evaluate(cs.where.rho, cs.where.s[0])) == doctest::Approx(cs.value).epsilon(1e-14));
  }
}

TEST_CASE("continuum kernel argument checks") {
  CHECK_THROWS_AS(MultiplierKernel(1, 4, 2, [](double) { return 1.0; }, 1.0, 2.0), Error);
  CHECK_THROWS_AS(MultiplierKernel(1, 1, 2, [](double) { return 1.0; }, 0.0, 2.0), Error);
  LPProfile P;
  CHECK_THROWS_AS(MultiplierKernel::lp(2, 2, 2, P, 0).to_spectrum(build_group(2, 3), make_lattice(3, 8.0, 8)),
                  Error);
}
