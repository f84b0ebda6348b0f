#pragma once

#include <string>
#include <vector>

namespace htype {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

// n-point Gauss-Legendre rule on [a, b].
QuadRule gauss_legendre(int n, double a, double b);

// Composite Gauss-Legendre: `panels` equal panels of `order` points each.
QuadRule composite_gauss(int panels, int order, double a, double b);

// Gauss-Legendre nodes in rho on [0, R]; integrates against d(rho) only,
// the rho^{2d-1} sphere weight is applied by the caller.
struct RadialGrid {
  double R = 0;
  std::vector<double> rho;
  std::vector<double> w;
  int size() const { return (int)rho.size(); }
};

RadialGrid radial_grid(double R, int n);

// Laguerre argument tau = |lambda| rho^2 / 2 beyond which every l_m, m <= M, is negligible.
double coverage_tau(int M, int d);

// Upper edge of the oscillatory zone of l_M^{(d-1)}.
double oscillation_tau(int M, int d);

// Number of grid nodes lying in [0, rho] where l_M(|lambda| rho^2/2) oscillates.
int nodes_in_oscillation(const RadialGrid& g, int M, int d, double lam);

// Required nodes per oscillation period (two zeros) of l_M.
inline constexpr int kNodesPerOscillation = 8;

// Checks coverage and node density for |lambda| in [lam_min, lam_max];
// returns an empty string when resolved, else the reason.
std::string resolution_problem(const RadialGrid& g, int M, int d, double lam_min, double lam_max);

// Smallest Gauss-Legendre grid satisfying resolution_problem() == "".
RadialGrid resolved_radial_grid(int M, int d, double lam_min, double lam_max);

}  // namespace htype
