#include <cmath>

#include "doctest.h"
#include "htype/errors.hpp"
#include "htype/laguerre.hpp"
#include "htype/quadrature.hpp"

using namespace htype;

TEST_CASE("laguerre base cases") {
  for (double a : {0.0, 1.0, 2.5})
    for (double tau : {0.0, 0.7, 3.0, 20.0}) CHECK(laguerre_fn(0, a, tau) == doctest::Approx(std::exp(-tau / 2)));
  CHECK(std::abs(laguerre_fn(1, 0.0, 1.0)) < 1e-15);
  // L_2^{(1)}(x) = (x^2 - 6x + 6)/2
  CHECK(laguerre_fn(2, 1.0, 1.5) == doctest::Approx((1.5 * 1.5 - 9 + 6) / 2 * std::exp(-0.75)));
  CHECK_THROWS_AS(laguerre_fn(2, 1.0, -1.0), Error);
  CHECK_THROWS_AS(laguerre_fn(-1, 1.0, 1.0), Error);
}

TEST_CASE("laguerre values agree with the library polynomial") {
  for (int m : {0, 3, 9, 16})
    for (double tau : {0.1, 2.0, 11.0, 40.0})
      CHECK(laguerre_fn(m, 1.0, tau) == doctest::Approx(std::assoc_laguerre(m, 1, tau) * std::exp(-tau / 2)).epsilon(1e-10));
}

TEST_CASE("laguerre orthogonality by composite Gauss quadrature") {
  // Independent oracle: high-order composite rule in tau on [0, 200].
  QuadRule q = composite_gauss(200, 20, 0.0, 200.0);
  for (double a : {0.0, 1.0, 2.0}) {
    double worst = 0;
    for (int m = 0; m <= 16; ++m)
      for (int n = 0; n <= 16; ++n) {
        double s = 0;
        for (size_t i = 0; i < q.x.size(); ++i)
          s += q.w[i] * laguerre_fn(m, a, q.x[i]) * laguerre_fn(n, a, q.x[i]) * std::pow(q.x[i], a);
        double want = m == n ? std::tgamma(m + a + 1) / std::tgamma(m + 1.0) : 0.0;
        double scale = std::tgamma(std::max(m, n) + a + 1) / std::tgamma(std::max(m, n) + 1.0);
        worst = std::max(worst, std::abs(s - want) / scale);
      }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("binomial weights and sphere areas") {
  CHECK(binom_weight(0, 3) == 1.0);
  CHECK(binom_weight(4, 1) == 1.0);
  CHECK(binom_weight(3, 2) == 4.0);
  CHECK(binom_weight(5, 3) == 21.0);
  CHECK(sphere_area(2) == doctest::Approx(2 * M_PI));
  CHECK(sphere_area(3) == doctest::Approx(4 * M_PI));
  CHECK(sphere_area(4) == doctest::Approx(2 * M_PI * M_PI));
}

TEST_CASE("radial grids") {
  RadialGrid g = radial_grid(3.0, 40);
  double s = 0;
  for (int i = 0; i < g.size(); ++i) s += g.w[i] * std::pow(g.rho[i], 5);
  CHECK(s == doctest::Approx(std::pow(3.0, 6) / 6));
  for (int i = 1; i < g.size(); ++i) CHECK(g.rho[i] > g.rho[i - 1]);
  RadialGrid r = resolved_radial_grid(16, 2, 0.1, 3.0);
  CHECK(resolution_problem(r, 16, 2, 0.1, 3.0).empty());
  CHECK_FALSE(resolution_problem(radial_grid(r.R, r.size() / 2), 16, 2, 0.1, 3.0).empty());
  CHECK_FALSE(resolution_problem(radial_grid(r.R / 2, r.size()), 16, 2, 0.1, 3.0).empty());
}
