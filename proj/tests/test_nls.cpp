#include <cmath>

#include "doctest.h"
#include "htype/errors.hpp"
#include "htype/nls.hpp"
#include "htype/spectral_calculus.hpp"
#include "test_support.hpp"

using namespace htype;
using testsupport::max_abs;
using testsupport::max_abs_diff;
using testsupport::rel_diff;
using testsupport::smooth_spectrum;

namespace {

SphericalSpectrum small_data(double amp, unsigned seed = 5) {
  auto G = build_group(1, 1);
  auto S = smooth_spectrum(G, 3, make_lattice(1, 16.0, 16), seed, 2.0, 0.6);
  return (amp / plancherel_norm(S)) * S;
}

NLSParams energy_params(double T, int n_t) {
  NLSParams P;
  P.alpha = 3;
  P.mu = 1.0;
  P.s = 0;
  P.T = T;
  P.n_t = n_t;
  P.pair = classify_pair(ExtRational::inf(), ExtRational(2), 1, 3);
  P.s_star = 0;
  return P;
}

}  // namespace

TEST_CASE("cubic nonlinearity matches an independent fine-grid projection") {
  auto S = small_data(1.0);
  NonlinearityPlan plan(S.G, S.M, S.grid, 3.0);
  CHECK(plan.pad() == 2);
  CHECK(max_abs(plan.apply(zero_spectrum(S.G, S.M, S.grid), 1.0)) == 0.0);

  auto fine = make_lattice(1, S.grid.L, 4 * S.grid.n_s);
  auto rho = resolved_radial_grid(4 * (S.M + 1), S.G.d, fine.lam_min(), fine.lam_max());
  auto u = inverse_transform(S, rho, fine);
  for (auto& v : u.v) v = cplx(0.5, 0.25) * v * v * std::conj(v);
  auto ref = forward_transform(u, S.M, S.grid);
  CHECK(rel_diff(plan.apply(S, cplx(0.5, 0.25)), ref) <= 1e-11);
  CHECK(rel_diff(nonlinearity(S, 3.0, cplx(0.5, 0.25)), ref) <= 1e-11);
}

TEST_CASE("nonlinearity is homogeneous of degree alpha and respects phases") {
  auto S = small_data(1.0);
  for (double a : {3.0, 5.0}) {
    NonlinearityPlan plan(S.G, S.M, S.grid, a);
    auto F = plan.apply(S, 1.0);
    CHECK(rel_diff(plan.apply(1.7 * S, 1.0), std::pow(1.7, a) * F) <= 1e-12);
    cplx ph = std::polar(1.0, 0.9);
    CHECK(rel_diff(plan.apply(ph * S, 1.0), ph * F) <= 1e-12);
  }
  CHECK_THROWS_AS(NonlinearityPlan(S.G, S.M, S.grid, 2.0), Error);
  CHECK_THROWS_AS(NonlinearityPlan(S.G, S.M, S.grid, 1.0), Error);
  CHECK(NonlinearityPlan(S.G, S.M, S.grid, 2.5, true).pad() == 2);
  CHECK(is_odd_integer(7.0));
  CHECK_FALSE(is_odd_integer(4.0));
}

TEST_CASE("Duhamel integral") {
  auto g = small_data(1.0);
  auto t = uniform_nodes(1.0, 8);
  SolverPath zero{t, std::vector<SphericalSpectrum>(t.size(), zero_spectrum(g.G, g.M, g.grid)), {}};
  for (auto& D : duhamel_all(zero)) CHECK(max_abs(D) == 0.0);

  // F(t) = e^{itL} g gives t e^{itL} g exactly
  auto F = free_flight(g, t);
  auto D = duhamel_all(F);
  for (size_t k = 0; k < t.size(); ++k) CHECK(rel_diff(D[k], t[k] * F.states[k]) <= 1e-12);
  CHECK(max_abs(D[0]) == 0.0);
  auto mid = duhamel(F, 0.3);
  CHECK(rel_diff(mid, 0.3 * propagator(g, 0.3)) <= 1e-12);
  CHECK(rel_diff(duhamel(F, 1.0), D.back()) <= 1e-13);
  CHECK_THROWS_AS(duhamel(F, 1.5), Error);

  // F(t) = cos(t) e^{itL} g gives sin(t) e^{itL} g, second order in the step
  auto err = [&](int n) {
    auto tn = uniform_nodes(1.0, n);
    SolverPath Fc;
    Fc.t = tn;
    for (double x : tn) Fc.states.push_back(std::cos(x) * propagator(g, x));
    return rel_diff(duhamel_all(Fc).back(), std::sin(1.0) * propagator(g, 1.0));
  };
  double e8 = err(8), e16 = err(16);
  CHECK(e16 < e8);
  CHECK(e8 / e16 == doctest::Approx(4.0).epsilon(0.02));

  // linear, and commutes with functions of L
  auto h = small_data(0.5, 9);
  SolverPath H = free_flight(h, t);
  SolverPath FH;
  FH.t = t;
  for (size_t k = 0; k < t.size(); ++k) FH.states.push_back(F.states[k] + cplx(0, 2) * H.states[k]);
  auto DH = duhamel_all(H), DFH = duhamel_all(FH);
  CHECK(rel_diff(DFH[5], D[5] + cplx(0, 2) * DH[5]) <= 1e-13);
  SolverPath FP;
  FP.t = t;
  for (auto& s : F.states) FP.states.push_back(frac_power(s, 0.7, true));
  CHECK(rel_diff(duhamel_all(FP)[6], frac_power(D[6], 0.7, true)) <= 1e-13);
}

TEST_CASE("X^s_T norm") {
  auto g = small_data(1.0);
  auto P = energy_params(1.0, 8);
  auto t = uniform_nodes(P.T, P.n_t);
  SolverPath z{t, std::vector<SphericalSpectrum>(t.size(), zero_spectrum(g.G, g.M, g.grid)), {}};
  CHECK(xst_norm(z, 1.0, P.pair, 0.0) == 0.0);
  auto F = free_flight(g, t);
  double hs = plancherel_norm(frac_power(g, 1.0, true));
  CHECK(xst_norm(F, 1.0, P.pair, 0.0) == doctest::Approx(2 * hs).epsilon(1e-12));
  CHECK(fast_lr_norm(g, 2.0) == doctest::Approx(plancherel_norm(g)).epsilon(1e-12));
  CHECK(fast_lr_norm(g, 2.0) == doctest::Approx(lr_norm(inverse_transform(g), 2.0)).epsilon(1e-10));
  // L^4_t L^inf: trapezoid of the grid max
  auto pair = classify_pair(ExtRational(4), ExtRational::inf(), 1, 3);
  double direct = 0;
  for (size_t k = 1; k < t.size(); ++k)
    direct += 0.5 * (t[k] - t[k - 1]) * (std::pow(fast_lr_norm(F.states[k - 1], INFINITY), 4) +
                                         std::pow(fast_lr_norm(F.states[k], INFINITY), 4));
  CHECK(xst_norm(F, 0.0, pair, 0.0) == doctest::Approx(plancherel_norm(g) + std::pow(direct, 0.25)).epsilon(1e-12));
}

TEST_CASE("Picard iteration") {
  auto u0 = small_data(0.3);
  auto P = energy_params(0.5, 16);

  SUBCASE("zero coupling reproduces free flight in one step") {
    P.mu = 0.0;
    auto path = picard_solve(u0, P, 5);
    CHECK(path.diag.iterations == 1);
    CHECK(path.diag.converged);
    auto F = free_flight(u0, path.t);
    for (size_t k = 0; k < path.t.size(); ++k) CHECK(max_abs_diff(path.states[k], F.states[k]) == 0.0);
    CHECK(mass_drift(path) <= 1e-12);
  }

  SUBCASE("small data contracts, conserves mass to second order and agrees with splitting") {
    u0 = 10.0 * u0;
    auto path = picard_solve(u0, P, 40);
    REQUIRE(path.diag.converged);
    CHECK(path.diag.contraction_factor() < 0.5);
    CHECK(fixed_point_residual(path, u0, P) <= 1e-9);
    double m16 = mass_drift(path);
    auto P2 = P;
    P2.n_t = 32;
    double m32 = mass_drift(picard_solve(u0, P2, 40));
    CHECK(m32 < m16);
    CHECK(m16 / m32 > 3.0);

    auto ref = strang_reference(u0, P, 256);
    CHECK(rel_diff(path.states.back(), propagator(u0, P.T)) > 1e-2);
    CHECK(rel_diff(path.states.back(), ref.states.back()) <= 1e-3);
  }

  SUBCASE("jobs do not change the result") {
    auto a = picard_solve(u0, P, 3);
    P.jobs = 3;
    auto b = picard_solve(u0, P, 3);
    CHECK(max_abs_diff(a.states.back(), b.states.back()) == 0.0);
    CHECK(a.diag.d_xs == b.diag.d_xs);
  }

  SUBCASE("large data is rejected") {
    auto big = small_data(60.0);
    P.T = 2.0;
    CHECK_THROWS_AS(picard_solve(big, P, 30), Error);
  }
}

TEST_CASE("Leibniz ratio probe") {
  auto S = small_data(1.0);
  LeibnizExponents e{2.0, 4.0, 8.0};
  auto v = leibniz_ratio_probe(S, 3.0, 0.0, e);
  CHECK(v.ratio() <= 1.0 + 1e-12);
  CHECK(v.ratio() > 0.0);
  auto vinf = leibniz_ratio_probe(S, 3.0, 0.0, {2.0, 2.0, INFINITY});
  CHECK(vinf.ratio() <= 1.0 + 1e-12);
  // degree-0 homogeneity in the amplitude
  auto v2 = leibniz_ratio_probe(3.0 * S, 3.0, 0.0, e);
  CHECK(v2.ratio() == doctest::Approx(v.ratio()).epsilon(1e-12));
  auto z = leibniz_ratio_probe(zero_spectrum(S.G, S.M, S.grid), 3.0, 0.0, e);
  CHECK(z.defined_zero);
  CHECK(z.ratio() == 0.0);
  CHECK_THROWS_AS(leibniz_ratio_probe(S, 3.0, 0.0, {2.0, 4.0, 4.0}), Error);

  auto vs = leibniz_ratio_probe(S, 3.0, 1.0, {2.0, 2.0, INFINITY});
  CHECK(std::isfinite(vs.ratio()));
  CHECK(vs.ratio() > 0.0);
}
