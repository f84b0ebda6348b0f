#pragma once

#include <functional>
#include <vector>

#include "htype/spectral_calculus.hpp"
#include "htype/supnorm.hpp"

namespace htype {

// Kernel of amp * theta0(4^{-shift} L) e^{itL} restricted to Laguerre modes m <= M,
// evaluated directly over R^p (no periodic box). The kernel depends on (|z|, |s|):
//   K(rho, r) = (2pi)^{-(d+p)} sum_m (2m+d)^{-d-p}
//               int theta(x) l_m(x rho^2 / (2(2m+d))) A_p(x r / (2m+d)) x^{d+p-1} dx
// with A_1 = 2 cos, A_2 = 2 pi J_0, A_3 = 4 pi sin(y)/y.
class MultiplierKernel {
 public:
  MultiplierKernel(int d, int p, int M, std::function<double(double)> theta0, double x_lo, double x_hi);

  static MultiplierKernel lp(int d, int p, int M, const LPProfile& prof, int j);
  static MultiplierKernel lp_tilde(int d, int p, int M, const LPProfile& prof, int j);

  int d() const { return d_; }
  int p() const { return p_; }
  int M() const { return M_; }
  int N() const { return 2 * d_ + 2 * p_; }
  double time() const { return t_; }
  double x_lo() const { return std::ldexp(x_lo0_, 2 * shift_); }
  double x_hi() const { return std::ldexp(x_hi0_, 2 * shift_); }

  // theta(x) including amplitude, dyadic shift and the propagator phase
  cplx multiplier(double x) const;

  MultiplierKernel propagated(double t) const;
  // u -> u(delta_{2^j} .)
  MultiplierKernel dilated(int j) const;
  MultiplierKernel scaled(double c) const;
  // multiplier times g(x); g moves with later dilations
  MultiplierKernel with_factor(std::function<double(double)> g) const;

  cplx evaluate(double rho, double r) const;

  // ||K||_{H^sigma-dot}: exact one-dimensional integral per mode
  double hdot_norm(double sigma) const;

  // Coefficients theta((2m+d)|lambda|) on a lattice (periodized version of the kernel).
  SphericalSpectrum to_spectrum(const HTypeGroup& G, const LatticeGrid& grid) const;

  // Largest modulus over (rho, r): coarse scan of the rho = 0 profile and a rho
  // scan, refined around the coarse argmax and around the origin.
  SupResult sup(const SupOptions& opt = {}) const;

 private:
  QuadRule x_rule(double rho, double r) const;
  // G(y) = int theta(x) A_p(x y) x^{d+p-1} dx on y = k * dy
  std::vector<cplx> axis_profile(double dy, int ny) const;

  int d_, p_, M_;
  std::function<double(double)> theta0_;
  double x_lo0_, x_hi0_;
  int shift_ = 0;
  double amp_ = 1.0;
  double t_ = 0.0;
};

double radial_fourier_factor(int p, double y);

}  // namespace htype
