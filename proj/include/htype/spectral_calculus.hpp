#pragma once

#include <functional>
#include <string>

#include "htype/spectrum.hpp"

namespace htype {

// Dyadic partition of unity in the spectral variable x = (2m+d)|lambda|.
// phi_0(x) = psi(x) / sum_k psi(4^{-k} x), psi a smooth bump on (1/4, 4) in log_4 x.
struct LPProfile {
  double psi(double x) const;
  double phi0(double x) const;
  double phi(int j, double x) const;  // phi_0(4^{-j} x)
  double phi_tilde(int j, double x) const;  // phi_{j-1} + phi_j + phi_{j+1}
  double phi_low(double x) const;  // sum_{j<=0} phi_j, equal to 1 on [0, 1]
  double phi_below(int J, double x) const;  // sum_{j<J} phi_j
  double support_lo() const { return 0.25; }
  double support_hi() const { return 4.0; }
  // lower bound of phi_0 on [2^{-3/2}, 2^{3/2}]
  double lower_bound() const;
};

using Multiplier = std::function<cplx(double)>;

SphericalSpectrum apply_multiplier(const SphericalSpectrum& S, const Multiplier& theta);
SphericalSpectrum propagator(const SphericalSpectrum& S, double t);
SphericalSpectrum heat(const SphericalSpectrum& S, double t);
SphericalSpectrum frac_power(const SphericalSpectrum& S, double s, bool inhomogeneous);

// Spectrum of x = (2m+d)|lambda| on the grid, per (m, bin); x = 0 at lambda = 0.
double spectral_x(int m, int d, double lam_abs);

struct BandRange {
  int lo = 0;  // bands lo..hi meet the sampled spectrum
  int hi = -1;
  int full_lo = 0;  // bands full_lo..full_hi lie inside [x_min, x_max]
  int full_hi = -1;
};

BandRange band_range(int M, int d, const LatticeGrid& grid);

SphericalSpectrum lp_kernel(const HTypeGroup& G, int j, const LPProfile& profile, int M, const LatticeGrid& grid);
SphericalSpectrum lp_kernel_tilde(const HTypeGroup& G, int j, const LPProfile& profile, int M,
                                  const LatticeGrid& grid);
SphericalSpectrum lp_project(const SphericalSpectrum& S, int j, const LPProfile& profile);

struct NormReport {
  std::string norm_kind;
  double s = 0;
  double r = 2;
  double q = 2;
  double value = 0;
  double band_truncation = 0;
  bool truncation_warning = false;
};

// L^r norm of the function represented by S: Plancherel for r = 2, physical
// quadrature on the resolved radial grid otherwise, refined sup-scan for r = inf.
double spectrum_lr_norm(const SphericalSpectrum& S, double r);

NormReport besov_norm(const SphericalSpectrum& S, double s, double r, double q, bool homogeneous,
                      const LPProfile& profile);
NormReport sobolev_norm(const SphericalSpectrum& S, double s, double r, bool homogeneous);

// u -> u(delta_{2^j} .): coefficients scaled by 2^{-jN} on the lattice with box L / 4^j.
SphericalSpectrum rescale_dyadic(const SphericalSpectrum& S, int j);
// Same, landing on a prescribed lattice; IncompatibleGrids unless it is the dilated lattice.
SphericalSpectrum rescale_dyadic(const SphericalSpectrum& S, int j, const LatticeGrid& target);

}  // namespace htype
