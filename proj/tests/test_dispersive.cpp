#include <cmath>

#include "doctest.h"
#include "htype/dispersive.hpp"
#include "htype/errors.hpp"
#include "htype/transform.hpp"
#include "test_support.hpp"

using namespace htype;
using testsupport::max_abs;
using testsupport::max_abs_diff;
using testsupport::smooth_spectrum;

TEST_CASE("log-log fit recovers a power law") {
  auto t = log_spaced(1.0, 100.0, 9);
  CHECK(t.front() == 1.0);
  CHECK(t.back() == 100.0);
  std::vector<double> v;
  for (double x : t) v.push_back(3.0 * std::pow(x, -0.5) * (x < 2 ? 10.0 : 1.0));
  auto fit = fit_decay(t, v, 2.0, 100.0);
  CHECK(fit.fitted_exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_decay(t, v, 200.0, 300.0), Error);
  CHECK_THROWS_AS(fit_decay({2.0, 1.0}, {1.0, 1.0}, 0.0, 10.0), Error);
}

TEST_CASE("kernel decay backends") {
  LPProfile P;
  auto G = build_group(2, 2);
  DecaySampling ds;
  ds.M = 4;
  ds.t_min = 0.1;
  ds.t_max = 2.0;
  auto K = MultiplierKernel::lp(2, 2, 4, P, 0);
  auto at0 = kernel_decay(G, P, {1e-9, 0.5, 1.0}, ds);
  CHECK(at0.sup_norms[0] == doctest::Approx(std::abs(K.evaluate(0, 0))).epsilon(1e-8));

  DecaySampling dl = ds;
  dl.backend = DecayBackend::Lattice;
  dl.grid = make_lattice(2, 64.0, 64);
  dl.jobs = 2;
  auto lat = kernel_decay(G, P, {1e-9, 0.5, 1.0}, dl);
  for (int i = 0; i < 3; ++i) CHECK(lat.sup_norms[i] == doctest::Approx(at0.sup_norms[i]).epsilon(1e-3));
  CHECK_THROWS_AS(kernel_decay(G, P, {1.0, 10.0}, dl), Error);
  CHECK_THROWS_AS(kernel_decay(build_group(1, 1), P, {1.0, 2.0}, ds), Error);
}

TEST_CASE("kernel scaling identity") {
  LPProfile P;
  auto G = build_group(2, 2);
  auto r0 = kernel_scaling_check(G, 0, 0.7, 4, make_lattice(2, 32.0, 32), P);
  CHECK(r0.relabel == 0.0);
  CHECK(r0.pointwise <= 1e-14 * r0.scale);
  auto r1 = kernel_scaling_check(G, 1, 0.5, 4, make_lattice(2, 8.0, 32), P);
  CHECK(r1.residual() <= 1e-8);
  CHECK(r1.scale > 1.0);
  auto rm = kernel_scaling_check(G, -1, 2.0, 4, make_lattice(2, 128.0, 32), P);
  CHECK(rm.residual() <= 1e-8);
  auto G3 = build_group(2, 3);
  auto r3 = kernel_scaling_check(G3, 1, 0.25, 3, make_lattice(3, 4.0, 16), P);
  CHECK(r3.residual() <= 1e-8 * std::max(1.0, r3.scale));
}

TEST_CASE("frequency split") {
  LPProfile P;
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 32.0, 32);
  CHECK(split_threshold(1.0) == 0);
  CHECK(split_threshold(0.25) == 1);
  CHECK(split_threshold(-4.0) == -1);
  CHECK(split_threshold(0.3) == 1);
  CHECK_THROWS_AS(split_threshold(0.0), Error);
  auto S = smooth_spectrum(G, 6, grid, 3, 1.0, 1.0);
  for (double t : {0.01, 1.0, 30.0}) {
    auto [lo, hi] = freq_split(S, t, P);
    CHECK(max_abs_diff(lo + hi, S) <= 1e-10 * max_abs(S));
  }
  auto band = lp_kernel(G, -1, P, 6, grid);
  auto [lo, hi] = freq_split(band, 1.0 / 64, P);
  CHECK(max_abs(hi) <= 1e-10 * max_abs(band));
  auto [lo2, hi2] = freq_split(band, 64.0, P);
  CHECK(max_abs(lo2) <= 1e-10 * max_abs(band));
}

TEST_CASE("split dispersive ratio is homogeneous and scale covariant") {
  LPProfile P;
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 32.0, 32);
  auto u = lp_kernel(G, 0, P, 4, grid);
  double t = 0.8;
  double base = split_dispersive_ratio(u, t, P).ratio();
  CHECK(base > 0);
  CHECK(split_dispersive_ratio(cplx(2.0) * u, t, P).ratio() == doctest::Approx(base).epsilon(1e-12));
  for (int j : {-1, 1}) {
    double r = split_dispersive_ratio(rescale_dyadic(u, j), std::ldexp(t, -2 * j), P).ratio();
    CHECK(std::abs(r / base - 1.0) <= 1e-6);
  }
  CHECK_THROWS_AS(split_dispersive_ratio(zero_spectrum(G, 4, grid), t, P), Error);

  auto K = MultiplierKernel::lp(2, 2, 4, P, 0);
  double c0 = split_dispersive_ratio(K, G, grid, 4.0, P).ratio();
  double c1 = split_dispersive_ratio(K.dilated(1), G, make_lattice(2, 8.0, 32), 1.0, P).ratio();
  CHECK(std::abs(c1 / c0 - 1.0) <= 1e-6);
}

TEST_CASE("interpolated band ratio") {
  LPProfile P;
  auto G = build_group(2, 2);
  auto grid = make_lattice(2, 32.0, 32);
  auto S = smooth_spectrum(G, 4, grid, 11, 1.0, 0.5);
  for (double t : {0.0, 0.3, 2.0}) CHECK(interp_band_ratio(S, 0, t, 2.0, P).ratio() == doctest::Approx(1.0).epsilon(1e-12));
  double a = interp_band_ratio(S, 0, 0.5, 4.0, P).ratio();
  double b = interp_band_ratio(rescale_dyadic(S, 1), 1, 0.125, 4.0, P).ratio();
  CHECK(std::abs(b / a - 1.0) <= 1e-6);
  CHECK_THROWS_AS(interp_band_ratio(S, 0, 1.0, 1.5, P), Error);

  auto K = MultiplierKernel::lp(2, 2, 4, P, 0);
  CHECK(interp_band_ratio(K, G, grid, 0, 3.0, 2.0, P).ratio() == doctest::Approx(1.0).epsilon(1e-12));
  double c0 = interp_band_ratio(K, G, grid, 0, 5.0, INFINITY, P).ratio();
  double c1 = interp_band_ratio(K.dilated(1), G, make_lattice(2, 8.0, 32), 1, 1.25, INFINITY, P).ratio();
  CHECK(std::abs(c1 / c0 - 1.0) <= 1e-6);
}

TEST_CASE("p = 1 transport has no dispersion") {
  auto G = build_group(1, 1);
  auto grid = make_lattice(1, 64.0, 256);
  int m0 = 1;
  auto S = zero_spectrum(G, 3, grid);
  for (long b = 0; b < S.n_bins(); ++b)
    if (grid.freq_index(b, 0) > 0) {
      double l = grid.lam_abs(b);
      S.at(m0, b) = std::exp(-(l - 1.5) * (l - 1.5) / 0.3);
    }
  std::vector<double> ts;
  for (int k = 0; k <= 20; ++k) ts.push_back(0.5 * k);
  auto rep = heisenberg_transport(S, m0, ts);
  CHECK(rep.shifts[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(rep.sup_norm_drift <= 1e-6);
  CHECK(rep.measured_shift_slope == doctest::Approx(2.0 * m0 + 1).epsilon(0.01));

  auto bad = S;
  bad.at(0, 1) = 1.0;
  CHECK_THROWS_AS(heisenberg_transport(bad, m0, ts), Error);
  auto neg = S;
  neg.at(m0, grid.n_bins() - 1) = 1.0;
  CHECK_THROWS_AS(heisenberg_transport(neg, m0, ts), Error);
  CHECK_THROWS_AS(heisenberg_transport(zero_spectrum(build_group(2, 2), 2, make_lattice(2, 8.0, 8)), 0, ts), Error);
}
