#include "htype/spectral_calculus.hpp"

#include <algorithm>
#include <cmath>

#include "htype/errors.hpp"
#include "htype/supnorm.hpp"
#include "htype/transform.hpp"

namespace htype {

namespace {

double bump(double y) { return std::abs(y) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - y * y)); }

double log4(double x) { return std::log(x) / std::log(4.0); }

}  // namespace

double LPProfile::psi(double x) const { return x <= 0 ? 0.0 : bump(log4(x)); }

double LPProfile::phi0(double x) const {
  if (x <= 0.25 || x >= 4.0) return 0.0;
  double y = log4(x);
  double k = std::floor(y);
  double den = bump(y - k) + bump(y - k - 1.0);
  return bump(y) / den;
}

double LPProfile::phi(int j, double x) const { return phi0(std::ldexp(x, -2 * j)); }

double LPProfile::phi_tilde(int j, double x) const { return phi(j - 1, x) + phi(j, x) + phi(j + 1, x); }

double LPProfile::phi_low(double x) const { return phi_below(1, x); }

double LPProfile::phi_below(int J, double x) const {
  double xs = std::ldexp(x, -2 * (J - 1));
  if (xs <= 1.0) return 1.0;
  if (xs >= 4.0) return 0.0;
  // Only phi_{J-1} and phi_J are nonzero here and they sum to one.
  return phi0(xs);
}

double LPProfile::lower_bound() const {
  double lo = 1.0;
  for (int k = 0; k <= 4000; ++k) {
    double x = std::pow(2.0, -1.5 + 3.0 * k / 4000.0);
    lo = std::min(lo, phi0(x));
  }
  return lo;
}

double spectral_x(int m, int d, double lam_abs) { return (2.0 * m + d) * lam_abs; }

SphericalSpectrum apply_multiplier(const SphericalSpectrum& S, const Multiplier& theta) {
  SphericalSpectrum R = S;
  long nb = S.n_bins();
  auto lam = S.grid.lam_abs_table();
  for (int m = 0; m <= S.M; ++m)
    for (long b = 0; b < nb; ++b) {
      if (lam[b] == 0.0) {
        R.at(m, b) = 0;
        continue;
      }
      cplx v = theta(spectral_x(m, S.G.d, lam[b]));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        fail(Errc::NonFiniteMultiplier, "multiplier is not finite at x=" + std::to_string(spectral_x(m, S.G.d, lam[b])));
      R.at(m, b) *= v;
    }
  return R;
}

SphericalSpectrum propagator(const SphericalSpectrum& S, double t) {
  return apply_multiplier(S, [t](double x) { return std::polar(1.0, t * x); });
}

SphericalSpectrum heat(const SphericalSpectrum& S, double t) {
  if (t < 0) fail(Errc::NegativeTime, "heat semigroup needs t >= 0");
  return apply_multiplier(S, [t](double x) { return cplx(std::exp(-t * x)); });
}

SphericalSpectrum frac_power(const SphericalSpectrum& S, double s, bool inhomogeneous) {
  if (inhomogeneous) return apply_multiplier(S, [s](double x) { return cplx(std::pow(1.0 + x, 0.5 * s)); });
  return apply_multiplier(S, [s](double x) { return cplx(std::pow(x, 0.5 * s)); });
}

BandRange band_range(int M, int d, const LatticeGrid& grid) {
  double xmin = spectral_x(0, d, grid.lam_min());
  double xmax = spectral_x(M, d, grid.lam_max());
  BandRange br;
  // phi_j lives on (4^{j-1}, 4^{j+1})
  br.lo = (int)std::floor(log4(xmin)) - 1;
  while (std::ldexp(1.0, 2 * (br.lo + 1)) <= xmin) ++br.lo;
  br.hi = (int)std::ceil(log4(xmax)) + 1;
  while (std::ldexp(1.0, 2 * (br.hi - 1)) >= xmax) --br.hi;
  br.full_lo = br.lo;
  while (std::ldexp(1.0, 2 * (br.full_lo - 1)) < xmin) ++br.full_lo;
  br.full_hi = br.hi;
  while (std::ldexp(1.0, 2 * (br.full_hi + 1)) > xmax) --br.full_hi;
  return br;
}

SphericalSpectrum lp_kernel(const HTypeGroup& G, int j, const LPProfile& profile, int M, const LatticeGrid& grid) {
  BandRange br = band_range(M, G.d, grid);
  if (j < br.lo || j > br.hi)
    fail(Errc::BandOutOfRange, "band " + std::to_string(j) + " outside the sampled range [" + std::to_string(br.lo) +
                                   ", " + std::to_string(br.hi) + "]");
  SphericalSpectrum S = zero_spectrum(G, M, grid);
  for (auto& v : S.c) v = 1.0;
  return apply_multiplier(S, [&](double x) { return cplx(profile.phi(j, x)); });
}

SphericalSpectrum lp_kernel_tilde(const HTypeGroup& G, int j, const LPProfile& profile, int M,
                                  const LatticeGrid& grid) {
  BandRange br = band_range(M, G.d, grid);
  if (j + 1 < br.lo || j - 1 > br.hi) fail(Errc::BandOutOfRange, "band " + std::to_string(j) + " outside the sampled range");
  SphericalSpectrum S = zero_spectrum(G, M, grid);
  for (auto& v : S.c) v = 1.0;
  return apply_multiplier(S, [&](double x) { return cplx(profile.phi_tilde(j, x)); });
}

SphericalSpectrum lp_project(const SphericalSpectrum& S, int j, const LPProfile& profile) {
  return convolve(S, lp_kernel(S.G, j, profile, S.M, S.grid));
}

double spectrum_lr_norm(const SphericalSpectrum& S, double r) {
  if (r == 2.0) return plancherel_norm(S);
  if (std::isinf(r)) return lattice_sup(S).value;
  return lr_norm(inverse_transform(S), r);
}

NormReport besov_norm(const SphericalSpectrum& S, double s, double r, double q, bool homogeneous,
                      const LPProfile& profile) {
  BandRange br = band_range(S.M, S.G.d, S.grid);
  NormReport rep;
  rep.norm_kind = homogeneous ? "besov_homogeneous" : "besov_inhomogeneous";
  rep.s = s;
  rep.r = r;
  rep.q = q;
  double acc = 0, mx = 0, mass = 0, edge_mass = 0;
  auto add = [&](double w, double v) {
    if (std::isinf(q))
      mx = std::max(mx, w * v);
    else
      acc += std::pow(w * v, q);
  };
  int first = br.lo;
  if (!homogeneous) {
    first = std::max(1, br.lo);
    SphericalSpectrum low = apply_multiplier(S, [&](double x) { return cplx(profile.phi_low(x)); });
    add(1.0, spectrum_lr_norm(low, r));
  }
  for (int j = first; j <= br.hi; ++j) {
    SphericalSpectrum piece = lp_project(S, j, profile);
    double l2 = plancherel_norm(piece);
    mass += l2 * l2;
    if (j < br.full_lo || j > br.full_hi) edge_mass += l2 * l2;
    if (l2 == 0.0) continue;
    add(std::pow(2.0, j * s), spectrum_lr_norm(piece, r));
  }
  rep.value = std::isinf(q) ? mx : std::pow(acc, 1.0 / q);
  rep.band_truncation = mass > 0 ? edge_mass / mass : 0.0;
  rep.truncation_warning = rep.band_truncation > 1e-6;
  return rep;
}

NormReport sobolev_norm(const SphericalSpectrum& S, double s, double r, bool homogeneous) {
  NormReport rep;
  rep.norm_kind = homogeneous ? "sobolev_homogeneous" : "sobolev_inhomogeneous";
  rep.s = s;
  rep.r = r;
  rep.q = r;
  rep.value = spectrum_lr_norm(frac_power(S, s, !homogeneous), r);
  return rep;
}

SphericalSpectrum rescale_dyadic(const SphericalSpectrum& S, int j) {
  SphericalSpectrum R = S;
  R.grid.L = std::ldexp(S.grid.L, -2 * j);
  double f = std::ldexp(1.0, -j * S.G.N());
  for (auto& v : R.c) v *= f;
  return R;
}

SphericalSpectrum rescale_dyadic(const SphericalSpectrum& S, int j, const LatticeGrid& target) {
  LatticeGrid want = S.grid;
  want.L = std::ldexp(S.grid.L, -2 * j);
  if (!(want == target))
    fail(Errc::IncompatibleGrids, "target lattice (L=" + std::to_string(target.L) + ", n_s=" +
                                      std::to_string(target.n_s) + ") is not the 4^" + std::to_string(-j) +
                                      " dilate of L=" + std::to_string(S.grid.L));
  return rescale_dyadic(S, j);
}

}  // namespace htype
