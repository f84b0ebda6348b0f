#pragma once

#include <utility>
#include <vector>

#include "htype/multiplier_kernel.hpp"
#include "htype/spectral_calculus.hpp"
#include "htype/supnorm.hpp"

namespace htype {

struct DecayFit {
  std::vector<double> times;
  std::vector<double> sup_norms;
  double fitted_exponent = 0;  // minus the log-log slope
  double r_squared = 0;
  double t_min = 0, t_max = 0;
};

std::vector<double> log_spaced(double a, double b, int n);

// Least-squares fit of log sup vs log t over the samples with t in [t_min, t_max].
DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& sups, double t_min, double t_max);

enum class DecayBackend { Continuum, Lattice };

struct DecaySampling {
  DecayBackend backend = DecayBackend::Continuum;
  int M = 4;
  LatticeGrid grid;  // lattice backend only
  double t_min = 1.0, t_max = 100.0;
  SupOptions sup;
  int jobs = 1;
};

// Largest |t| for which mass transported from radius r0 at the fastest active
// speed 2m+d stays L/4 away from the box edge.
double aliasing_window(const SphericalSpectrum& S, double r0 = 0.0);

DecayFit kernel_decay(const HTypeGroup& G, const LPProfile& profile, const std::vector<double>& t_grid,
                      const DecaySampling& sampling);

struct ScalingResidual {
  double relabel = 0;    // physical grids: LHS vs 2^{Nj} rescale_dyadic(RHS)
  double pointwise = 0;  // LHS grid values vs 2^{Nj} RHS evaluated at dilated points
  double scale = 0;      // max |LHS|
  double residual() const { return std::max(relabel, pointwise); }
};

// e^{itL} Phi~_j (z,s) = 2^{Nj} (e^{i 4^j t L} Phi~_0)(2^j z, 4^j s), LHS on `grid`,
// RHS on the lattice with box 4^j L.
ScalingResidual kernel_scaling_check(const HTypeGroup& G, int j, double t, int M, const LatticeGrid& grid,
                                     const LPProfile& profile, int n_points = 64);

int split_threshold(double t);

// Sum_{j<J(t)} Delta_j S and Sum_{j>=J(t)} Delta_j S, J(t) = ceil(log2(1/sqrt|t|)).
std::pair<SphericalSpectrum, SphericalSpectrum> freq_split(const SphericalSpectrum& S, double t,
                                                           const LPProfile& profile);

struct RatioParts {
  double numerator = 0;
  double denominator = 0;
  double ratio() const { return numerator / denominator; }
};

// ||e^{itL}u||_inf / (||low||_{B^N_{1,1}} + |t|^{-(p-1)/2} ||high||_{B^{N-p+1}_{1,1}})
RatioParts split_dispersive_ratio(const SphericalSpectrum& S, double t, const LPProfile& profile);
// Same with the sup of the continuum kernel u; Besov norms of u on `l1_grid`.
RatioParts split_dispersive_ratio(const MultiplierKernel& u, const HTypeGroup& G, const LatticeGrid& l1_grid,
                                  double t, const LPProfile& profile);

double interp_delta(double r);

// ||Delta_j e^{itL} S||_r / (2^{2(N-p+1)delta j} min{2^{2(p-1)delta j}, |t|^{-(p-1)delta}} ||Delta_j S||_{r'})
RatioParts interp_band_ratio(const SphericalSpectrum& S, int j, double t, double r, const LPProfile& profile);
// Continuum numerator (r = 2 or inf); ||Delta_j u||_{r'} on `l1_grid`.
RatioParts interp_band_ratio(const MultiplierKernel& u, const HTypeGroup& G, const LatticeGrid& l1_grid, int j,
                             double t, double r, const LPProfile& profile);

struct TransportReport {
  std::vector<double> times;
  std::vector<double> sup_norms;
  std::vector<double> shifts;  // unwrapped cross-correlation peaks
  double sup_norm_drift = 0;
  double measured_shift_slope = 0;
};

// exp(-(lambda - lam0)^2 / width) on Laguerre index m0 and lambda > 0 only (p = 1).
SphericalSpectrum single_mode_packet(const HTypeGroup& G, int M, const LatticeGrid& grid, int m0, double lam0,
                                     double width);

// p = 1 data on a single Laguerre index m0 and lambda > 0 travels in s without
// changing shape.
TransportReport heisenberg_transport(const SphericalSpectrum& S, int m0, const std::vector<double>& t_grid,
                                     const SupOptions& opt = {});

}  // namespace htype
