#include "htype/multiplier_kernel.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "htype/errors.hpp"
#include "htype/laguerre.hpp"

namespace htype {

double radial_fourier_factor(int p, double y) {
  constexpr double pi = std::numbers::pi;
  switch (p) {
    case 1: return 2.0 * std::cos(y);
    case 2: return 2.0 * pi * ::j0(y);
    case 3: return std::abs(y) < 1e-8 ? 4.0 * pi * (1.0 - y * y / 6.0) : 4.0 * pi * std::sin(y) / y;
    default: fail(Errc::DimensionMismatch, "radial Fourier factor implemented for p <= 3");
  }
}

MultiplierKernel::MultiplierKernel(int d, int p, int M, std::function<double(double)> theta0, double x_lo,
                                   double x_hi)
    : d_(d), p_(p), M_(M), theta0_(std::move(theta0)), x_lo0_(x_lo), x_hi0_(x_hi) {
  if (d < 1 || p < 1 || p > 3) fail(Errc::DimensionMismatch, "continuum kernels need d >= 1 and 1 <= p <= 3");
  if (M < 0) fail(Errc::CutoffTooLarge, "Laguerre cutoff must be nonnegative");
  if (!(x_lo > 0) || !(x_hi > x_lo)) fail(Errc::OutOfRange, "multiplier support must be a positive interval");
}

MultiplierKernel MultiplierKernel::lp(int d, int p, int M, const LPProfile& prof, int j) {
  MultiplierKernel k(d, p, M, [prof](double x) { return prof.phi0(x); }, prof.support_lo(), prof.support_hi());
  k.shift_ = j;
  return k;
}

MultiplierKernel MultiplierKernel::lp_tilde(int d, int p, int M, const LPProfile& prof, int j) {
  MultiplierKernel k(d, p, M, [prof](double x) { return prof.phi_tilde(0, x); }, prof.support_lo() / 4.0,
                     prof.support_hi() * 4.0);
  k.shift_ = j;
  return k;
}

cplx MultiplierKernel::multiplier(double x) const {
  double v = theta0_(std::ldexp(x, -2 * shift_));
  if (v == 0.0) return 0.0;
  return amp_ * v * std::polar(1.0, t_ * x);
}

MultiplierKernel MultiplierKernel::propagated(double t) const {
  MultiplierKernel k = *this;
  k.t_ += t;
  return k;
}

MultiplierKernel MultiplierKernel::dilated(int j) const {
  MultiplierKernel k = *this;
  k.shift_ += j;
  k.amp_ *= std::ldexp(1.0, -j * N());
  k.t_ = std::ldexp(t_, -2 * j);
  return k;
}

MultiplierKernel MultiplierKernel::scaled(double c) const {
  MultiplierKernel k = *this;
  k.amp_ *= c;
  return k;
}

MultiplierKernel MultiplierKernel::with_factor(std::function<double(double)> g) const {
  MultiplierKernel k = *this;
  int sh = shift_;
  auto th = theta0_;
  k.theta0_ = [th, g = std::move(g), sh](double y) {
    double v = th(y);
    return v == 0.0 ? 0.0 : v * g(std::ldexp(y, 2 * sh));
  };
  return k;
}

QuadRule MultiplierKernel::x_rule(double rho, double r) const {
  (void)rho;
  double a = x_lo(), b = x_hi();
  double osc = (b - a) * (std::abs(t_) + r / d_) / (2.0 * std::numbers::pi) + 0.5 * M_;
  int panels = 32 + (int)std::ceil(0.5 * osc);
  return composite_gauss(panels, 16, a, b);
}

cplx MultiplierKernel::evaluate(double rho, double r) const {
  QuadRule q = x_rule(rho, r);
  int n = (int)q.x.size();
  std::vector<cplx> acc(M_ + 1, cplx(0));
  std::vector<double> lag(M_ + 1);
  double a = d_ - 1.0;
  for (int i = 0; i < n; ++i) {
    double x = q.x[i];
    cplx th = multiplier(x);
    if (th == cplx(0)) continue;
    cplx base = th * (q.w[i] * std::pow(x, d_ + p_ - 1));
    for (int m = 0; m <= M_; ++m) {
      double k = 2.0 * m + d_;
      double lm;
      if (rho == 0.0) {
        lm = binom_weight(m, d_);
      } else {
        laguerre_table(m, a, x * rho * rho / (2.0 * k), lag.data());
        lm = lag[m];
      }
      acc[m] += base * (lm * radial_fourier_factor(p_, x * r / k));
    }
  }
  cplx out = 0;
  for (int m = 0; m <= M_; ++m) out += acc[m] * std::pow(2.0 * m + d_, -(double)(d_ + p_));
  return out * inversion_constant(d_, p_);
}

double MultiplierKernel::hdot_norm(double sigma) const {
  QuadRule q = composite_gauss(64, 16, x_lo(), x_hi());
  double integral = 0;
  for (size_t i = 0; i < q.x.size(); ++i)
    integral += q.w[i] * std::norm(multiplier(q.x[i])) * std::pow(q.x[i], sigma + d_ + p_ - 1);
  double modes = 0;
  for (int m = 0; m <= M_; ++m) modes += binom_weight(m, d_) * std::pow(2.0 * m + d_, -(double)(d_ + p_));
  return std::sqrt(inversion_constant(d_, p_) * sphere_area(p_) * modes * integral);
}

SphericalSpectrum MultiplierKernel::to_spectrum(const HTypeGroup& G, const LatticeGrid& grid) const {
  if (G.d != d_ || G.p != p_) fail(Errc::DimensionMismatch, "group does not match kernel dimensions");
  SphericalSpectrum S = zero_spectrum(G, M_, grid);
  auto lam = grid.lam_abs_table();
  for (int m = 0; m <= M_; ++m)
    for (long b = 0; b < (long)lam.size(); ++b)
      if (lam[b] > 0) S.at(m, b) = multiplier(spectral_x(m, d_, lam[b]));
  return S;
}

std::vector<cplx> MultiplierKernel::axis_profile(double dy, int ny) const {
  QuadRule q = x_rule(0.0, d_ * dy * ny);
  std::vector<cplx> base(q.x.size());
  for (size_t i = 0; i < q.x.size(); ++i) base[i] = multiplier(q.x[i]) * (q.w[i] * std::pow(q.x[i], d_ + p_ - 1));
  std::vector<cplx> G(ny);
  for (int k = 0; k < ny; ++k) {
    double y = k * dy;
    cplx s = 0;
    for (size_t i = 0; i < q.x.size(); ++i)
      if (base[i] != cplx(0)) s += base[i] * radial_fourier_factor(p_, q.x[i] * y);
    G[k] = s;
  }
  return G;
}

namespace {

// Four-point Lagrange interpolation on a uniform table.
cplx interp(const std::vector<cplx>& g, double dy, double y) {
  double u = y / dy;
  int i = (int)std::floor(u);
  int n = (int)g.size();
  if (i < 1) i = 1;
  if (i > n - 3) i = n - 3;
  double f = u - i;
  double w0 = -f * (f - 1) * (f - 2) / 6.0, w1 = (f + 1) * (f - 1) * (f - 2) / 2.0;
  double w2 = -(f + 1) * f * (f - 2) / 2.0, w3 = (f + 1) * f * (f - 1) / 6.0;
  return w0 * g[i - 1] + w1 * g[i] + w2 * g[i + 1] + w3 * g[i + 2];
}

}  // namespace

SupResult MultiplierKernel::sup(const SupOptions& opt) const {
  double a = x_lo(), b = x_hi();
  double y_max = std::abs(t_) + 64.0 / (b - a);
  double dy = 2.0 * std::numbers::pi / (16.0 * b);
  int ny = (int)std::ceil(y_max / dy) + 4;
  std::vector<cplx> G = axis_profile(dy, ny);
  std::vector<double> wm(M_ + 1);
  for (int m = 0; m <= M_; ++m) wm[m] = binom_weight(m, d_) * std::pow(2.0 * m + d_, -(double)(d_ + p_));
  double C = inversion_constant(d_, p_);
  double dr = d_ * dy;
  int nr = (int)std::ceil((2.0 * M_ + d_) * y_max / dr);
  double best = -1, r_best = 0;
  for (int k = 0; k <= nr; ++k) {
    double r = k * dr;
    cplx s = 0;
    for (int m = 0; m <= M_; ++m) {
      double y = r / (2.0 * m + d_);
      if (y > (ny - 3) * dy) continue;
      s += wm[m] * interp(G, dy, y);
    }
    double v = std::abs(C * s);
    if (v > best) {
      best = v;
      r_best = r;
    }
  }
  SupResult res;
  int nrho = 64;
  double rho_scan = std::sqrt(60.0 * d_ / a);
  double drho = rho_scan / (nrho - 1);
  double coarse = -1, rho_c = 0, r_c = 0;
  for (double r0 : {r_best, 0.0})
    for (int i = 0; i < nrho; ++i) {
      double v = std::abs(evaluate(i * drho, r0));
      if (v > coarse) {
        coarse = v;
        rho_c = i * drho;
        r_c = r0;
      }
    }
  res.coarse = coarse;
  res.value = coarse;
  res.where = PhysPoint{rho_c, {r_c}};
  auto f = [&](const std::vector<double>& x) { return std::abs(evaluate(x[0], x[1])); };
  std::vector<double> cell{drho, dr}, lower{0.0, 0.0};
  for (auto start : {std::vector<double>{rho_c, r_c}, std::vector<double>{0.0, 0.0}}) {
    double v = refine_max(f, start, cell, lower, opt);
    if (v > res.value) {
      res.value = v;
      res.where = PhysPoint{start[0], {start[1]}};
    }
  }
  return res;
}

}  // namespace htype
