#include "htype/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "htype/errors.hpp"

namespace htype {

QuadRule gauss_legendre(int n, double a, double b) {
  if (n < 1) fail(Errc::OutOfRange, "quadrature needs at least one node");
  // Newton iteration on P_n in extended precision; nodes come out descending.
  std::vector<long double> xs(n), ws(n);
  const long double pi = 3.141592653589793238462643383279502884L;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    long double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1 : n * (x * p1 - p0) / (x * x - 1);
    long double w = 2 / ((1 - x * x) * dp * dp);
    xs[i] = x;
    xs[n - 1 - i] = -x;
    ws[i] = ws[n - 1 - i] = w;
  }
  if (n % 2 == 1) xs[n / 2] = 0;
  QuadRule q;
  q.x.resize(n);
  q.w.resize(n);
  long double half = 0.5L * ((long double)b - a), mid = 0.5L * ((long double)b + a);
  for (int i = 0; i < n; ++i) {
    q.x[i] = (double)(mid - half * xs[i]);
    q.w[i] = (double)(half * ws[i]);
  }
  return q;
}

QuadRule composite_gauss(int panels, int order, double a, double b) {
  QuadRule base = gauss_legendre(order, -1.0, 1.0);
  QuadRule q;
  double hw = 0.5 * (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    double mid = a + (2 * k + 1) * hw;
    for (int i = 0; i < order; ++i) {
      q.x.push_back(mid + hw * base.x[i]);
      q.w.push_back(hw * base.w[i]);
    }
  }
  return q;
}

RadialGrid radial_grid(double R, int n) {
  if (!(R > 0)) fail(Errc::NonpositiveScale, "radial extent must be positive");
  QuadRule q = gauss_legendre(n, -1.0, 1.0);
  RadialGrid g;
  g.R = R;
  g.rho.resize(n);
  g.w.resize(n);
  double half = 0.5 * R;
  for (int i = 0; i < n; ++i) {
    g.rho[i] = half * (q.x[i] + 1.0);
    g.w[i] = half * q.w[i];
  }
  return g;
}

double coverage_tau(int M, int d) { return 4.0 * M + 2.0 * d + 10.0 * std::sqrt(M + 1.0) + 20.0; }

double oscillation_tau(int M, int d) { return 4.0 * M + 2.0 * d + 2.0; }

int nodes_in_oscillation(const RadialGrid& g, int M, int d, double lam) {
  double rho_osc = std::sqrt(2.0 * oscillation_tau(M, d) / lam);
  int n = 0;
  for (double r : g.rho) n += r <= rho_osc;
  return n;
}

std::string resolution_problem(const RadialGrid& g, int M, int d, double lam_min, double lam_max) {
  std::ostringstream os;
  double cover = 0.5 * lam_min * g.R * g.R;
  if (cover < coverage_tau(M, d)) {
    os << "radial extent R=" << g.R << " covers tau=" << cover << " at |lambda|_min=" << lam_min
       << ", need " << coverage_tau(M, d);
    return os.str();
  }
  // l_M has M zeros; M/2 oscillation periods, at least 4 nodes per zero.
  int need = kNodesPerOscillation * (M + 1) / 2 + 4;
  for (int k = 0; k <= 8; ++k) {
    double lam = lam_min * std::pow(lam_max / lam_min, k / 8.0);
    int have = nodes_in_oscillation(g, M, d, lam);
    if (have < need) {
      os << "only " << have << " radial nodes inside the oscillatory zone of l_" << M << " at |lambda|=" << lam
         << ", need " << need;
      return os.str();
    }
  }
  return "";
}

RadialGrid resolved_radial_grid(int M, int d, double lam_min, double lam_max) {
  if (!(lam_min > 0) || !(lam_max >= lam_min)) fail(Errc::OutOfRange, "invalid spectral range");
  double R = std::sqrt(2.0 * coverage_tau(M, d) / lam_min) * (1.0 + 1e-12);
  int n = 16;
  while (true) {
    RadialGrid g = radial_grid(R, n);
    if (resolution_problem(g, M, d, lam_min, lam_max).empty()) return g;
    n += std::max(4, n / 16);
    if (n > 20000) fail(Errc::ResolutionInsufficient, "radial grid would exceed 20000 nodes");
  }
}

}  // namespace htype
